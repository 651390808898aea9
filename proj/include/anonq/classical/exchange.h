#ifndef ANONQ_CLASSICAL_EXCHANGE_H
#define ANONQ_CLASSICAL_EXCHANGE_H

#include <vector>

#include "anonq/classical/view_tree.h"
#include "anonq/runtime/program.h"

namespace anonq::classical {

/// Building blocks for round programs. An exchange with E message rounds
/// sends in the round it begins and completes in the round that receives the
/// E-th batch, so it spans E + 1 rounds and the next exchange may begin in
/// the round this one completes.

/// Floods the union of the colors held by active parties.
class ColorFlood {
   public:
    void begin(bool active, const Value &color, int exchanges, const runtime::PartyContext &ctx,
               runtime::StepResult &out);
    /// Merges received sets; returns true in the round the last batch arrives.
    bool receive(const runtime::Inbox &inbox, const runtime::PartyContext &ctx, runtime::StepResult &out);

    /// Sorted, duplicate-free.
    const ValueList &colors() const { return colors_; }
    /// 0: no color, 1: exactly one color, 2: two or more.
    int report_case() const { return colors_.size() >= 2 ? 2 : static_cast<int>(colors_.size()); }
    bool consistent() const { return colors_.size() <= 1; }

   private:
    ValueList colors_;
    int remaining_ = 0;
};

/// Builds the depth-k view rooted at this party.
class ViewFlood {
   public:
    void begin(std::int64_t label, int depth, const runtime::PartyContext &ctx, runtime::StepResult &out);
    bool receive(const runtime::Inbox &inbox, const runtime::PartyContext &ctx, runtime::StepResult &out);
    bool done() const { return view_ && view_->height() == depth_; }
    const ViewPtr &view() const { return view_; }

   private:
    ViewPtr view_;
    std::int64_t label_ = 0;
    int depth_ = 0;
    void send(const runtime::PartyContext &ctx, runtime::StepResult &out) const;
};

/// Sorted union of two sorted, duplicate-free lists.
ValueList sorted_union(const ValueList &a, const ValueList &b);

}  // namespace anonq::classical

#endif
