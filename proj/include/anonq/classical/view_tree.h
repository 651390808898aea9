#ifndef ANONQ_CLASSICAL_VIEW_TREE_H
#define ANONQ_CLASSICAL_VIEW_TREE_H

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "anonq/common/value.h"

namespace anonq::classical {

class ViewNode;
using ViewPtr = std::shared_ptr<const ViewNode>;

/// (out-port at the sender, in-port at the receiver).
struct EdgeLabel {
    int out_port;
    int in_port;
    bool operator==(const EdgeLabel &) const = default;
};

/// Rooted labeled tree of in-walks. Nodes are interned per thread, so two
/// structurally equal views built on the same thread are the same object.
class ViewNode final : public ValueObject {
   public:
    struct Child {
        EdgeLabel edge;
        ViewPtr view;
    };

    std::int64_t label() const { return label_; }
    const std::vector<Child> &children() const { return children_; }
    /// Depth of the tree (0 for a single node).
    int height() const { return height_; }
    /// Node count of the uncompressed tree, saturating.
    std::uint64_t tree_size() const { return tree_size_; }

    std::size_t hash() const override { return hash_; }
    bool equals(const ValueObject &other) const override;
    bool less(const ValueObject &other) const override;
    std::uint64_t bit_size() const override { return bits_; }
    nlohmann::json to_json() const override;

    ViewNode(std::int64_t label, std::vector<Child> children);

    /// Memo slots filled by truncate(); nodes are confined to the thread that made them.
    mutable std::vector<ViewPtr> truncations;

   private:
    std::int64_t label_;
    std::vector<Child> children_;
    int height_ = 0;
    std::size_t hash_ = 0;
    std::uint64_t tree_size_ = 1;
    std::uint64_t bits_ = 0;
};

/// Interned node with the given label and children (children must share one height).
ViewPtr make_view(std::int64_t label, std::vector<ViewNode::Child> children);
/// Same tree cut off below `depth`.
ViewPtr truncate(const ViewPtr &view, int depth);
/// Structural comparison that does not rely on interning.
bool same_view(const ViewPtr &a, const ViewPtr &b);

struct ViewClassCount {
    std::int64_t q = 0;   ///< distinct depth-(m-1) views among subtrees rooted at depth <= m
    std::int64_t q1 = 0;  ///< those whose root label is 1
};

/// Counts classes for the symmetric guess with parameter m. view.height() >= 2m - 1.
ViewClassCount count_view_classes(const ViewPtr &view, int m);
/// m * q1 / q.
Rational symmetric_guess(const ViewPtr &view, int m);

Value as_value(const ViewPtr &view);
ViewPtr as_view(const Value &v);

}  // namespace anonq::classical

#endif
