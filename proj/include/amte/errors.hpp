#pragma once

#include <stdexcept>
#include <string>

namespace amte {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define AMTE_ERROR(Name)                       \
    struct Name : Error {                      \
        using Error::Error;                    \
    }

AMTE_ERROR(ParameterError);
AMTE_ERROR(DomainError);
AMTE_ERROR(NonConvexProfile);
AMTE_ERROR(GridTooCoarse);
AMTE_ERROR(DegenerateProfile);
AMTE_ERROR(InconsistentProfile);
AMTE_ERROR(ConvergenceError);
AMTE_ERROR(StepFailure);
AMTE_ERROR(NoConvergence);
AMTE_ERROR(MembershipViolation);
AMTE_ERROR(SingularityMismatch);
AMTE_ERROR(BlowupInsideWindow);
AMTE_ERROR(PositivityLoss);
AMTE_ERROR(TailUnbounded);
AMTE_ERROR(SignError);
AMTE_ERROR(NearSingular);
AMTE_ERROR(UnknownKind);
AMTE_ERROR(InputError);

#undef AMTE_ERROR

}  // namespace amte
