#pragma once

#include <stdexcept>
#include <string>

namespace mmc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define MMC_DEFINE_ERROR(Name)               \
  class Name : public Error {                \
   public:                                   \
    explicit Name(const std::string& what)   \
        : Error(#Name ": " + what) {}        \
  };

MMC_DEFINE_ERROR(InvalidShape)
MMC_DEFINE_ERROR(DivisibilityViolation)
MMC_DEFINE_ERROR(ShapeMismatch)
MMC_DEFINE_ERROR(NotAnAutomorphism)
MMC_DEFINE_ERROR(EnumerationBoundExceeded)
MMC_DEFINE_ERROR(BoundExceeded)
MMC_DEFINE_ERROR(KeyOverflow)
MMC_DEFINE_ERROR(FamilyMismatch)
MMC_DEFINE_ERROR(UnsupportedFamily)
MMC_DEFINE_ERROR(NotRegular)
MMC_DEFINE_ERROR(NotABrace)
MMC_DEFINE_ERROR(AdditiveShapeMismatch)
MMC_DEFINE_ERROR(RelationViolation)
MMC_DEFINE_ERROR(NotBijective)
MMC_DEFINE_ERROR(IncompleteCensus)
MMC_DEFINE_ERROR(IoError)
MMC_DEFINE_ERROR(ParseError)

#undef MMC_DEFINE_ERROR

}  // namespace mmc
