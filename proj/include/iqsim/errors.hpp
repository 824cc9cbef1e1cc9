#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace iqsim {

/// Base class for all iqsim errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Mismatched vector/matrix dimensions.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// Pilot vector unusable for projection (zero norm, too short).
class InvalidPilotError : public Error {
  public:
    using Error::Error;
};

/// Zadoff-Chu root not coprime with the sequence length.
class InvalidRootError : public Error {
  public:
    using Error::Error;
};

/// Orthonormalization could not reach the requested rank.
class RankError : public Error {
  public:
    RankError(const std::string& msg, std::size_t achieved)
        : Error(msg), achieved_rank(achieved) {}
    std::size_t achieved_rank;
};

/// Estimator input with a vanishing denominator.
class DegenerateInputError : public Error {
  public:
    using Error::Error;
};

/// ratio == -1 in the least-squares inversion.
class SingularRatioError : public Error {
  public:
    using Error::Error;
};

/// |mu|^2 - |nu|^2 too close to zero to invert the mixing.
class CompensationSingularError : public Error {
  public:
    using Error::Error;
};

/// IF-chain reference deviates from the baseband model beyond tolerance.
class ModelMismatchError : public Error {
  public:
    ModelMismatchError(const std::string& msg, double deviation)
        : Error(msg), deviation_db(deviation) {}
    double deviation_db;
};

/// Export/file I/O failure.
class ExportError : public Error {
  public:
    using Error::Error;
};

} // namespace iqsim
