#include "anonq/classical/view_tree.h"

#include <unordered_map>
#include <unordered_set>

#include "anonq/common/errors.h"

namespace anonq::classical {

namespace {

constexpr std::uint64_t kSaturate = std::uint64_t{1} << 62;

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    return (a >= kSaturate || b >= kSaturate || a + b >= kSaturate) ? kSaturate : a + b;
}

struct InternKey {
    std::int64_t label;
    std::vector<std::tuple<int, int, const ViewNode *>> children;
    bool operator==(const InternKey &) const = default;
};

struct InternKeyHash {
    std::size_t operator()(const InternKey &k) const {
        std::size_t h = std::hash<std::int64_t>()(k.label);
        for (auto &[o, i, p] : k.children) {
            h = hash_combine(h, std::hash<int>()(o * 131 + i));
            h = hash_combine(h, std::hash<const void *>()(p));
        }
        return h;
    }
};

struct InternTable {
    std::unordered_map<InternKey, std::weak_ptr<const ViewNode>, InternKeyHash> map;
    std::size_t sweep_at = 1 << 12;

    void maybe_sweep() {
        if (map.size() < sweep_at) {
            return;
        }
        std::erase_if(map, [](const auto &kv) { return kv.second.expired(); });
        sweep_at = std::max<std::size_t>(1 << 12, map.size() * 2);
    }
};

InternTable &table() {
    thread_local InternTable t;
    return t;
}

}  // namespace

ViewNode::ViewNode(std::int64_t label, std::vector<Child> children) : label_(label), children_(std::move(children)) {
    hash_ = std::hash<std::int64_t>()(label_) * 0x9e3779b97f4a7c15ULL;
    bits_ = 32;
    for (const auto &c : children_) {
        height_ = std::max(height_, c.view->height() + 1);
        hash_ = hash_combine(hash_, std::hash<int>()(c.edge.out_port * 131 + c.edge.in_port));
        hash_ = hash_combine(hash_, c.view->hash());
        tree_size_ = sat_add(tree_size_, c.view->tree_size());
        bits_ = sat_add(bits_, sat_add(32, c.view->bit_size()));
    }
}

bool ViewNode::equals(const ValueObject &other) const {
    const auto *o = dynamic_cast<const ViewNode *>(&other);
    if (!o) {
        return false;
    }
    if (o == this) {
        return true;
    }
    if (o->hash_ != hash_ || o->label_ != label_ || o->children_.size() != children_.size()) {
        return false;
    }
    for (std::size_t k = 0; k < children_.size(); k++) {
        if (!(children_[k].edge == o->children_[k].edge) || !children_[k].view->equals(*o->children_[k].view)) {
            return false;
        }
    }
    return true;
}

bool ViewNode::less(const ValueObject &other) const {
    const auto &o = dynamic_cast<const ViewNode &>(other);
    if (equals(o)) {
        return false;
    }
    if (label_ != o.label_) {
        return label_ < o.label_;
    }
    if (children_.size() != o.children_.size()) {
        return children_.size() < o.children_.size();
    }
    for (std::size_t k = 0; k < children_.size(); k++) {
        const auto &a = children_[k];
        const auto &b = o.children_[k];
        if (a.edge.out_port != b.edge.out_port) {
            return a.edge.out_port < b.edge.out_port;
        }
        if (a.edge.in_port != b.edge.in_port) {
            return a.edge.in_port < b.edge.in_port;
        }
        if (!a.view->equals(*b.view)) {
            return a.view->less(*b.view);
        }
    }
    return false;
}

nlohmann::json ViewNode::to_json() const {
    nlohmann::json kids = nlohmann::json::array();
    for (const auto &c : children_) {
        kids.push_back({{"edge", {c.edge.out_port, c.edge.in_port}}, {"view", c.view->to_json()}});
    }
    return {{"label", label_}, {"children", kids}};
}

ViewPtr make_view(std::int64_t label, std::vector<ViewNode::Child> children) {
    InternKey key{label, {}};
    key.children.reserve(children.size());
    int height = -1;
    for (const auto &c : children) {
        if (!c.view) {
            throw PreconditionError("null child view");
        }
        if (height >= 0 && c.view->height() != height) {
            throw PreconditionError("child views of unequal depth");
        }
        height = c.view->height();
        key.children.emplace_back(c.edge.out_port, c.edge.in_port, c.view.get());
    }
    auto &t = table();
    auto it = t.map.find(key);
    if (it != t.map.end()) {
        if (auto live = it->second.lock()) {
            return live;
        }
    }
    auto node = std::make_shared<const ViewNode>(label, std::move(children));
    t.map[std::move(key)] = node;
    t.maybe_sweep();
    return node;
}

namespace {

struct NodeDepth {
    const ViewNode *node;
    int depth;
    bool operator==(const NodeDepth &) const = default;
};
struct NodeDepthHash {
    std::size_t operator()(const NodeDepth &k) const {
        return hash_combine(std::hash<const void *>()(k.node), std::hash<int>()(k.depth));
    }
};

ViewPtr truncate_cached(const ViewPtr &view, int depth) {
    if (view->height() <= depth) {
        return view;
    }
    auto &slots = view->truncations;
    if (slots.empty()) {
        slots.resize(view->height());
    }
    if (slots[depth]) {
        return slots[depth];
    }
    std::vector<ViewNode::Child> kids;
    if (depth > 0) {
        kids.reserve(view->children().size());
        for (const auto &c : view->children()) {
            kids.push_back({c.edge, truncate_cached(c.view, depth - 1)});
        }
    }
    slots[depth] = make_view(view->label(), std::move(kids));
    return slots[depth];
}

}  // namespace

ViewPtr truncate(const ViewPtr &view, int depth) {
    if (depth < 0) {
        throw DomainError("negative truncation depth");
    }
    return truncate_cached(view, depth);
}

bool same_view(const ViewPtr &a, const ViewPtr &b) {
    return a->equals(*b);
}

ViewClassCount count_view_classes(const ViewPtr &view, int m) {
    if (m < 1) {
        throw DomainError("symmetric guess needs m >= 1");
    }
    if (view->height() < 2 * m - 1) {
        throw PreconditionError("view too shallow for the symmetric guess");
    }
    std::unordered_set<const ViewNode *> classes;
    std::unordered_set<NodeDepth, NodeDepthHash> visited;
    std::vector<std::pair<const ViewPtr *, int>> stack{{&view, 0}};
    ViewClassCount count;
    while (!stack.empty()) {
        auto [node, d] = stack.back();
        stack.pop_back();
        if (!visited.insert({node->get(), d}).second) {
            continue;
        }
        ViewPtr cut = truncate_cached(*node, m - 1);
        if (classes.insert(cut.get()).second) {
            count.q++;
            count.q1 += cut->label() == 1;
        }
        if (d < m) {
            for (const auto &c : (*node)->children()) {
                stack.emplace_back(&c.view, d + 1);
            }
        }
    }
    return count;
}

Rational symmetric_guess(const ViewPtr &view, int m) {
    auto c = count_view_classes(view, m);
    return Rational(static_cast<std::int64_t>(m) * c.q1, c.q);
}

Value as_value(const ViewPtr &view) {
    return Value(std::static_pointer_cast<const ValueObject>(view));
}

ViewPtr as_view(const Value &v) {
    auto p = std::dynamic_pointer_cast<const ViewNode>(v.as_object());
    if (!p) {
        throw DomainError("value is not a view");
    }
    return p;
}

}  // namespace anonq::classical
