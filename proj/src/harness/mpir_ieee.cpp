#include "dispatch.hpp"

namespace taperbench::detail {

template ExperimentOutcome run_mpir_family<MpirFamily::ieee>(const TestSystem&, const PrecisionTriple&, double,
                                                               const PlanSet&, int);

}  // namespace taperbench::detail
