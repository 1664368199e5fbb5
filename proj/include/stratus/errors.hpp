#pragma once

#include <stdexcept>
#include <string>

namespace stratus {

/// Root of the simulator error hierarchy. Everything thrown on purpose
/// derives from this, so callers can catch one type at the boundary.
class SimError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Entity registration attempted after run() already started.
class RunAlreadyStarted : public SimError {
public:
    using SimError::SimError;
};

/// An event was scheduled in the past, with a negative delay, or with a
/// non-finite timestamp.
class CausalityViolation : public SimError {
public:
    using SimError::SimError;
};

/// A message names an entity id that was never registered.
class UnknownEntity : public SimError {
public:
    using SimError::SimError;
};

/// An operation names a VM the datacenter does not know (never created,
/// or already destroyed).
class UnknownVm : public SimError {
public:
    using SimError::SimError;
};

/// A caller broke an operation precondition.
class ContractViolation : public SimError {
public:
    using SimError::SimError;
};

/// A datacenter id was registered with the information service twice.
class DuplicateDatacenter : public SimError {
public:
    using SimError::SimError;
};

/// The information service has no datacenter able to host the requested VMs.
class NoSuitableProvider : public SimError {
public:
    using SimError::SimError;
};

/// A scenario document failed validation; the message names the offending
/// path and the violated constraint.
class ValidationError : public SimError {
public:
    using SimError::SimError;
};

/// An entity handler threw during dispatch. The original exception is
/// attached as the nested exception; the message describes the offending
/// event.
class EntityFault : public SimError {
public:
    using SimError::SimError;
};

/// A result file or directory could not be created or written; the message
/// names the path.
class IoError : public SimError {
public:
    using SimError::SimError;
};

}  // namespace stratus
