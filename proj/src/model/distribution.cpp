#include "polcheck/model/distribution.h"

#include <sstream>

namespace polcheck::model {

std::string DistributionIssue::message() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind) {
        case DistributionIssueKind::SumOutOfTolerance:
            os << "probabilities sum to " << value << " instead of 1";
            break;
        case DistributionIssueKind::NonPositiveMass:
            os << "outcome " << outcome << " has non-positive mass " << value;
            break;
        case DistributionIssueKind::DuplicateOutcome:
            os << "outcome " << outcome << " appears more than once";
            break;
    }
    return os.str();
}

std::string describe_outcome(const std::string& o) { return o; }

std::string describe_outcome(StateIndex o) { return std::to_string(o); }

std::string describe_outcome(const FactoredState& o) { return o.to_string({}); }

}  // namespace polcheck::model
