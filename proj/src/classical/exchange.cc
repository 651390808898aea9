#include "anonq/classical/exchange.h"

#include <algorithm>

#include "anonq/common/errors.h"

namespace anonq::classical {

using runtime::Inbox;
using runtime::PartyContext;
using runtime::StepResult;

ValueList sorted_union(const ValueList &a, const ValueList &b) {
    ValueList out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

void ColorFlood::begin(bool active, const Value &color, int exchanges, const PartyContext &ctx, StepResult &out) {
    colors_.clear();
    if (active) {
        colors_.push_back(color);
    }
    remaining_ = exchanges;
    if (remaining_ > 0) {
        runtime::broadcast(ctx, out, Value(colors_));
    }
}

bool ColorFlood::receive(const Inbox &inbox, const PartyContext &ctx, StepResult &out) {
    if (remaining_ <= 0) {
        return true;
    }
    for (const auto &port : inbox) {
        for (const auto &m : port) {
            const auto &theirs = m.payload.as_list();
            if (!std::includes(colors_.begin(), colors_.end(), theirs.begin(), theirs.end())) {
                colors_ = sorted_union(colors_, theirs);
            }
        }
    }
    if (--remaining_ == 0) {
        return true;
    }
    runtime::broadcast(ctx, out, Value(colors_));
    return false;
}

void ViewFlood::send(const PartyContext &ctx, StepResult &out) const {
    for (int p = 0; p < ctx.d_out; p++) {
        out.outbox[p].push_back(runtime::Message{{}, ValueList{Value(p + 1), as_value(view_)}, std::nullopt});
    }
}

void ViewFlood::begin(std::int64_t label, int depth, const PartyContext &ctx, StepResult &out) {
    label_ = label;
    depth_ = depth;
    view_ = make_view(label, {});
    if (depth_ > 0) {
        send(ctx, out);
    }
}

bool ViewFlood::receive(const Inbox &inbox, const PartyContext &ctx, StepResult &out) {
    if (done()) {
        return true;
    }
    std::vector<ViewNode::Child> kids;
    kids.reserve(ctx.d_in);
    for (int j = 0; j < ctx.d_in; j++) {
        if (inbox[j].size() != 1) {
            throw PreconditionError("view exchange expects one message per in-port");
        }
        const auto &payload = inbox[j][0].payload;
        kids.push_back({EdgeLabel{static_cast<int>(payload[0].as_int()), j + 1}, as_view(payload[1])});
    }
    view_ = make_view(label_, std::move(kids));
    if (done()) {
        return true;
    }
    send(ctx, out);
    return false;
}

}  // namespace anonq::classical
