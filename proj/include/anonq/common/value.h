#ifndef ANONQ_COMMON_VALUE_H
#define ANONQ_COMMON_VALUE_H

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace anonq {

/// Exact fraction with positive denominator, always in lowest terms.
class Rational {
   public:
    Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_integer() const { return den_ == 1; }
    bool is_nonnegative_integer() const { return den_ == 1 && num_ >= 0; }

    bool operator==(const Rational &other) const = default;
    bool operator<(const Rational &other) const;
    std::string str() const;

   private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// Payload types defined outside this header (views) plug in through this interface.
class ValueObject {
   public:
    virtual ~ValueObject() = default;
    virtual std::size_t hash() const = 0;
    virtual bool equals(const ValueObject &other) const = 0;
    /// Total order among objects of the same dynamic type.
    virtual bool less(const ValueObject &other) const = 0;
    virtual std::uint64_t bit_size() const = 0;
    virtual nlohmann::json to_json() const = 0;
};

class Value;
using ValueList = std::vector<Value>;
using ObjectPtr = std::shared_ptr<const ValueObject>;

/// Message payloads, party inputs and outputs.
class Value {
   public:
    using Storage = std::variant<std::monostate, bool, std::int64_t, Rational, std::string, ValueList, ObjectPtr>;

    Value() = default;
    Value(bool b) : v_(b) {}
    Value(int i) : v_(static_cast<std::int64_t>(i)) {}
    Value(std::int64_t i) : v_(i) {}
    Value(Rational r) : v_(r) {}
    Value(std::string s) : v_(std::move(s)) {}
    Value(const char *s) : v_(std::string(s)) {}
    Value(ValueList l) : v_(std::move(l)) {}
    Value(ObjectPtr o) : v_(std::move(o)) {}

    bool is_none() const { return std::holds_alternative<std::monostate>(v_); }
    bool is_bool() const { return std::holds_alternative<bool>(v_); }
    bool is_int() const { return std::holds_alternative<std::int64_t>(v_); }
    bool is_rational() const { return std::holds_alternative<Rational>(v_); }
    bool is_string() const { return std::holds_alternative<std::string>(v_); }
    bool is_list() const { return std::holds_alternative<ValueList>(v_); }
    bool is_object() const { return std::holds_alternative<ObjectPtr>(v_); }

    bool as_bool() const;
    std::int64_t as_int() const;
    const Rational &as_rational() const;
    const std::string &as_string() const;
    const ValueList &as_list() const;
    const ObjectPtr &as_object() const;
    const Value &operator[](std::size_t i) const { return as_list().at(i); }

    const Storage &storage() const { return v_; }

    bool operator==(const Value &other) const;
    bool operator!=(const Value &other) const { return !(*this == other); }
    bool operator<(const Value &other) const;
    std::size_t hash() const;

    /// Size of a plain encoding: bool 1, int 32, rational 64, string 8/char,
    /// list = sum of items + 8 per item, objects report their own.
    std::uint64_t bit_size() const;
    nlohmann::json to_json() const;
    std::string str() const;

   private:
    Storage v_;
};

struct ValueHash {
    std::size_t operator()(const Value &v) const { return v.hash(); }
};
struct ValueListHash {
    std::size_t operator()(const ValueList &v) const;
};

inline std::size_t hash_combine(std::size_t seed, std::size_t h) {
    return seed ^ (h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace anonq

#endif
