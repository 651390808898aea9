#include "anonq/qsim/choice.h"

#include "anonq/common/errors.h"

namespace anonq::qsim {

std::size_t RandomChoice::choose(const std::vector<double> &probabilities) {
    double total = 0;
    for (double p : probabilities) {
        if (p > kPruneThreshold) {
            total += p;
        }
    }
    double u = std::uniform_real_distribution<double>(0, total)(rng_);
    std::size_t last = probabilities.size();
    for (std::size_t k = 0; k < probabilities.size(); k++) {
        if (probabilities[k] <= kPruneThreshold) {
            continue;
        }
        last = k;
        if (u < probabilities[k]) {
            return k;
        }
        u -= probabilities[k];
    }
    if (last == probabilities.size()) {
        throw ValidationError("no outcome with positive probability");
    }
    return last;
}

std::size_t FixedChoice::choose(const std::vector<double> &probabilities) {
    if (option_ >= probabilities.size() || probabilities[option_] <= kPruneThreshold) {
        throw PreconditionError("fixed choice names an impossible outcome");
    }
    return option_;
}

}  // namespace anonq::qsim
