#include "anonq/common/value.h"

#include <numeric>
#include <typeinfo>

#include "anonq/common/errors.h"

namespace anonq {

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) {
        throw DomainError("rational with zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    num_ = num;
    den_ = den;
}

bool Rational::operator<(const Rational &other) const {
    return static_cast<__int128>(num_) * other.den_ < static_cast<__int128>(other.num_) * den_;
}

std::string Rational::str() const {
    if (den_ == 1) {
        return std::to_string(num_);
    }
    return std::to_string(num_) + "/" + std::to_string(den_);
}

bool Value::as_bool() const {
    if (auto p = std::get_if<bool>(&v_)) {
        return *p;
    }
    throw DomainError("value is not a bool: " + str());
}

std::int64_t Value::as_int() const {
    if (auto p = std::get_if<std::int64_t>(&v_)) {
        return *p;
    }
    throw DomainError("value is not an integer: " + str());
}

const Rational &Value::as_rational() const {
    if (auto p = std::get_if<Rational>(&v_)) {
        return *p;
    }
    throw DomainError("value is not a rational: " + str());
}

const std::string &Value::as_string() const {
    if (auto p = std::get_if<std::string>(&v_)) {
        return *p;
    }
    throw DomainError("value is not a string: " + str());
}

const ValueList &Value::as_list() const {
    if (auto p = std::get_if<ValueList>(&v_)) {
        return *p;
    }
    throw DomainError("value is not a list: " + str());
}

const ObjectPtr &Value::as_object() const {
    if (auto p = std::get_if<ObjectPtr>(&v_)) {
        return *p;
    }
    throw DomainError("value is not an object: " + str());
}

bool Value::operator==(const Value &other) const {
    if (v_.index() != other.v_.index()) {
        return false;
    }
    if (is_object()) {
        const auto &a = as_object();
        const auto &b = other.as_object();
        if (a == b) {
            return true;
        }
        if (!a || !b || typeid(*a) != typeid(*b)) {
            return false;
        }
        return a->equals(*b);
    }
    return v_ == other.v_;
}

bool Value::operator<(const Value &other) const {
    if (v_.index() != other.v_.index()) {
        return v_.index() < other.v_.index();
    }
    if (is_object()) {
        const auto &a = as_object();
        const auto &b = other.as_object();
        if (a == b || !b) {
            return false;
        }
        if (!a) {
            return true;
        }
        if (typeid(*a) != typeid(*b)) {
            return typeid(*a).before(typeid(*b));
        }
        return a->less(*b);
    }
    if (is_list()) {
        const auto &a = as_list();
        const auto &b = other.as_list();
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
    return v_ < other.v_;
}

std::size_t Value::hash() const {
    std::size_t seed = v_.index() * 0x51ed27ULL;
    return std::visit(
        [&](const auto &x) -> std::size_t {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return seed;
            } else if constexpr (std::is_same_v<T, bool> || std::is_same_v<T, std::int64_t>) {
                return hash_combine(seed, std::hash<std::int64_t>()(static_cast<std::int64_t>(x)));
            } else if constexpr (std::is_same_v<T, Rational>) {
                return hash_combine(hash_combine(seed, std::hash<std::int64_t>()(x.num())), x.den());
            } else if constexpr (std::is_same_v<T, std::string>) {
                return hash_combine(seed, std::hash<std::string>()(x));
            } else if constexpr (std::is_same_v<T, ValueList>) {
                for (const auto &item : x) {
                    seed = hash_combine(seed, item.hash());
                }
                return seed;
            } else {
                return hash_combine(seed, x ? x->hash() : 0);
            }
        },
        v_);
}

std::uint64_t Value::bit_size() const {
    return std::visit(
        [](const auto &x) -> std::uint64_t {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return 0;
            } else if constexpr (std::is_same_v<T, bool>) {
                return 1;
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                return 32;
            } else if constexpr (std::is_same_v<T, Rational>) {
                return 64;
            } else if constexpr (std::is_same_v<T, std::string>) {
                return 8 * x.size();
            } else if constexpr (std::is_same_v<T, ValueList>) {
                std::uint64_t total = 0;
                for (const auto &item : x) {
                    total += 8 + item.bit_size();
                }
                return total;
            } else {
                return x ? x->bit_size() : 0;
            }
        },
        v_);
}

nlohmann::json Value::to_json() const {
    return std::visit(
        [](const auto &x) -> nlohmann::json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else if constexpr (std::is_same_v<T, bool> || std::is_same_v<T, std::int64_t> ||
                                 std::is_same_v<T, std::string>) {
                return x;
            } else if constexpr (std::is_same_v<T, Rational>) {
                return x.str();
            } else if constexpr (std::is_same_v<T, ValueList>) {
                nlohmann::json arr = nlohmann::json::array();
                for (const auto &item : x) {
                    arr.push_back(item.to_json());
                }
                return arr;
            } else {
                return x ? x->to_json() : nlohmann::json(nullptr);
            }
        },
        v_);
}

std::string Value::str() const {
    return to_json().dump();
}

std::size_t ValueListHash::operator()(const ValueList &v) const {
    std::size_t seed = v.size();
    for (const auto &item : v) {
        seed = hash_combine(seed, item.hash());
    }
    return seed;
}

}  // namespace anonq
