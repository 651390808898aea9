#ifndef ANONQ_QSIM_CHOICE_H
#define ANONQ_QSIM_CHOICE_H

#include <cstddef>
#include <random>
#include <vector>

namespace anonq::qsim {

/// Outcomes with probability at most this are treated as impossible.
inline constexpr double kPruneThreshold = 1e-12;
/// "Zero" for exactness checks and the norm tolerance.
inline constexpr double kZeroTolerance = 1e-9;

/// Resolves a random event. Sampling draws; branch enumeration walks every option.
class ChoiceSource {
   public:
    virtual ~ChoiceSource() = default;
    /// probabilities sum to 1; entries <= kPruneThreshold must never be returned.
    virtual std::size_t choose(const std::vector<double> &probabilities) = 0;
};

class RandomChoice : public ChoiceSource {
   public:
    explicit RandomChoice(std::mt19937_64 &rng) : rng_(rng) {}
    std::size_t choose(const std::vector<double> &probabilities) override;

   private:
    std::mt19937_64 &rng_;
};

/// Always returns the given option; for deterministic tests.
class FixedChoice : public ChoiceSource {
   public:
    explicit FixedChoice(std::size_t option) : option_(option) {}
    std::size_t choose(const std::vector<double> &probabilities) override;

   private:
    std::size_t option_;
};

}  // namespace anonq::qsim

#endif
