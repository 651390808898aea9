#ifndef ANONQ_QSIM_REVERSIBLE_MAP_H
#define ANONQ_QSIM_REVERSIBLE_MAP_H

#include <array>
#include <functional>
#include <vector>

#include "anonq/qsim/symbols.h"

namespace anonq::qsim {

/// A permutation of the product basis of `arity` registers, stored as a table.
class ReversibleMap {
   public:
    /// table[i] is the image of basis tuple i (register 0 is the most significant digit).
    /// Throws ValidationError unless table is a bijection on [0, 4^arity).
    ReversibleMap(int arity, std::vector<int> table);
    static ReversibleMap from_function(int arity, const std::function<void(Symbol *)> &f);

    static ReversibleMap identity(int arity);
    /// (a, b, c) -> (a, b, c XOR enc(a u b) XOR enc(empty)); on an empty target writes a u b.
    static ReversibleMap union_write();
    /// (a, c) -> (a, c XOR enc(a) XOR enc(empty)); on an empty target writes a copy of a.
    static ReversibleMap copy();
    /// (f, y) -> (f, y XOR [f == x]): flips the low bit of y when f holds both values.
    static ReversibleMap flag_cross();

    int arity() const { return arity_; }
    int operator()(int tuple) const { return table_[tuple]; }

   private:
    int arity_;
    std::vector<int> table_;
};

}  // namespace anonq::qsim

#endif
