#pragma once

#include <stdexcept>
#include <string>

namespace sik3 {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define SIK3_DEFINE_ERROR(Name, default_msg)                                   \
    struct Name : Error {                                                      \
        Name() : Error(default_msg) {}                                         \
        explicit Name(const std::string& m) : Error(std::string(default_msg) + ": " + m) {} \
    }

// exactalg
SIK3_DEFINE_ERROR(ZeroInput, "zero input");
SIK3_DEFINE_ERROR(NonUniformValuation, "non-uniform valuation over squarefree place");

// lattice
SIK3_DEFINE_ERROR(InvalidParameter, "invalid parameter");
SIK3_DEFINE_ERROR(OddResult, "rescaled lattice is not even");
SIK3_DEFINE_ERROR(DegenerateLattice, "degenerate lattice");
SIK3_DEFINE_ERROR(GroupTooLarge, "discriminant group exceeds search cap");
SIK3_DEFINE_ERROR(NonIntegralGlue, "glue vector pairs non-integrally");
SIK3_DEFINE_ERROR(OddGlue, "glue vector has odd square");
SIK3_DEFINE_ERROR(NonPrimitiveVector, "vector is not primitive");
SIK3_DEFINE_ERROR(DegenerateSublattice, "degenerate sublattice");
SIK3_DEFINE_ERROR(NotInDual, "vector is not in the dual lattice");

// quadform
SIK3_DEFINE_ERROR(InvalidN, "invalid N");
SIK3_DEFINE_ERROR(InvalidDiscriminant, "invalid discriminant");

// ellsurf
SIK3_DEFINE_ERROR(NonMinimalModel, "Weierstrass model is not minimal");
SIK3_DEFINE_ERROR(AdditiveAtNonRationalPlace, "additive reduction at non-rational place");
SIK3_DEFINE_ERROR(NonRationalPlace, "operation requires a rational place");
SIK3_DEFINE_ERROR(PointNotOnCurve, "point does not satisfy the Weierstrass equation");
SIK3_DEFINE_ERROR(SingularHeightGram, "height Gram matrix is singular");
SIK3_DEFINE_ERROR(InconsistentData, "inconsistent Neron-Severi data");
SIK3_DEFINE_ERROR(DegenerateCurve, "degenerate curve");
SIK3_DEFINE_ERROR(NonzeroConstantTerm, "cubic has nonzero constant term");
SIK3_DEFINE_ERROR(DegenerateLeadingCoefficient, "cubic has zero leading coefficient");

// isogeny
SIK3_DEFINE_ERROR(SingularKernel, "kernel point is singular on the generic fibre");

// series
SIK3_DEFINE_ERROR(DegenerateParams, "degenerate family parameters");
SIK3_DEFINE_ERROR(CriterionFailed, "representation criterion fails");
SIK3_DEFINE_ERROR(NoRepresentation, "criterion holds but no primitive representation found");

#undef SIK3_DEFINE_ERROR

} // namespace sik3
