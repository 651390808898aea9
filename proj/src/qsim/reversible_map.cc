#include "anonq/qsim/reversible_map.h"

#include "anonq/common/errors.h"

namespace anonq::qsim {

ReversibleMap::ReversibleMap(int arity, std::vector<int> table) : arity_(arity), table_(std::move(table)) {
    if (arity < 1 || arity > 8) {
        throw ValidationError("reversible map arity out of range");
    }
    std::size_t size = std::size_t{1} << (2 * arity);
    if (table_.size() != size) {
        throw ValidationError("reversible map table has wrong size");
    }
    std::vector<char> hit(size, 0);
    for (int t : table_) {
        if (t < 0 || static_cast<std::size_t>(t) >= size || hit[t]) {
            throw ValidationError("reversible map is not a bijection");
        }
        hit[t] = 1;
    }
}

ReversibleMap ReversibleMap::from_function(int arity, const std::function<void(Symbol *)> &f) {
    std::size_t size = std::size_t{1} << (2 * arity);
    std::vector<int> table(size);
    std::vector<Symbol> digits(arity);
    for (std::size_t t = 0; t < size; t++) {
        for (int k = 0; k < arity; k++) {
            digits[k] = symbol(static_cast<int>(t >> (2 * (arity - 1 - k))));
        }
        f(digits.data());
        int out = 0;
        for (int k = 0; k < arity; k++) {
            out = out * 4 + index(digits[k]);
        }
        table[t] = out;
    }
    return ReversibleMap(arity, std::move(table));
}

ReversibleMap ReversibleMap::identity(int arity) {
    return from_function(arity, [](Symbol *) {});
}

ReversibleMap ReversibleMap::union_write() {
    return from_function(3, [](Symbol *s) {
        s[2] = symbol(index(s[2]) ^ index(set_union(s[0], s[1])) ^ index(Symbol::Empty));
    });
}

ReversibleMap ReversibleMap::copy() {
    return from_function(2, [](Symbol *s) { s[1] = symbol(index(s[1]) ^ index(s[0]) ^ index(Symbol::Empty)); });
}

ReversibleMap ReversibleMap::flag_cross() {
    return from_function(2, [](Symbol *s) {
        if (s[0] == Symbol::Cross) {
            s[1] = symbol(index(s[1]) ^ 1);
        }
    });
}

}  // namespace anonq::qsim
