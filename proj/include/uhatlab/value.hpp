#pragma once

#include <string>
#include <variant>
#include <vector>

#include "uhatlab/rational.hpp"

namespace uhatlab {

// One letter of an input alphabet.
struct Symbol {
    char ch = 0;
    friend bool operator==(const Symbol&, const Symbol&) = default;
    friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

class Value;
using Tuple = std::vector<Value>;

// Carrier of every list entry a program manipulates. Equality is structural:
// Int(1) and Rat(1) are distinct values even though they compare equal
// numerically inside expressions.
class Value {
public:
    using Storage = std::variant<Symbol, Int, Rat, bool, Tuple>;

    Value() : storage_(Int(0)) {}
    Value(Symbol s) : storage_(s) {}
    Value(Int i) : storage_(std::move(i)) {}
    Value(Rat r) : storage_(std::move(r)) {}
    Value(bool b) : storage_(b) {}
    Value(Tuple t) : storage_(std::move(t)) {}

    static Value symbol(char c) { return Value(Symbol{c}); }
    static Value integer(long long v) { return Value(Int(v)); }
    static Value rational(long long num, long long den = 1) { return Value(Rat(Int(num), Int(den))); }

    bool is_symbol() const { return std::holds_alternative<Symbol>(storage_); }
    bool is_int() const { return std::holds_alternative<Int>(storage_); }
    bool is_rat() const { return std::holds_alternative<Rat>(storage_); }
    bool is_bool() const { return std::holds_alternative<bool>(storage_); }
    bool is_tuple() const { return std::holds_alternative<Tuple>(storage_); }
    bool is_numeric() const { return is_int() || is_rat(); }

    const Symbol& as_symbol() const { return std::get<Symbol>(storage_); }
    const Int& as_int() const { return std::get<Int>(storage_); }
    const Rat& as_rat() const { return std::get<Rat>(storage_); }
    bool as_bool() const { return std::get<bool>(storage_); }
    const Tuple& as_tuple() const { return std::get<Tuple>(storage_); }

    // Numeric view with Int promoted to Rat.
    Rat to_rat() const;

    const Storage& storage() const { return storage_; }

    bool operator==(const Value& other) const { return storage_ == other.storage_; }
    bool operator!=(const Value& other) const { return !(*this == other); }

    std::string to_string() const;

private:
    Storage storage_;
};

// Total order on values, used only to keep enumerated carriers in a
// deterministic order (it is not part of the program semantics).
bool value_less(const Value& a, const Value& b);

} // namespace uhatlab
