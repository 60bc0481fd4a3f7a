/**
 * Copyright 2026, the qrecover authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#ifndef QRECOVER_ERRORS_HPP_
#define QRECOVER_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace qrecover {

// Base class for everything this library throws on purpose. Anything else
// escaping the library is a bug.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

#define QRECOVER_DEFINE_ERROR(name)                                            \
  class name : public Error {                                                  \
  public:                                                                      \
    explicit name(const std::string &msg) : Error(#name ": " + msg) {}         \
  }

QRECOVER_DEFINE_ERROR(NotHermitian);
QRECOVER_DEFINE_ERROR(NoConvergence);
QRECOVER_DEFINE_ERROR(NotPSD);
QRECOVER_DEFINE_ERROR(UnknownLabel);
QRECOVER_DEFINE_ERROR(DimensionMismatch);
QRECOVER_DEFINE_ERROR(DimensionCap);
QRECOVER_DEFINE_ERROR(NotSymmetric);
QRECOVER_DEFINE_ERROR(TooManyCopies);
QRECOVER_DEFINE_ERROR(BlockMismatch);
QRECOVER_DEFINE_ERROR(OverlappingLabels);
QRECOVER_DEFINE_ERROR(TooManyFactors);
QRECOVER_DEFINE_ERROR(DomainError);
QRECOVER_DEFINE_ERROR(BadDecomposition);
QRECOVER_DEFINE_ERROR(InvalidState);
QRECOVER_DEFINE_ERROR(IoError);

#undef QRECOVER_DEFINE_ERROR

} // namespace qrecover

#endif // QRECOVER_ERRORS_HPP_
