#include "uhatlab/value.hpp"

#include <sstream>

namespace uhatlab {

std::optional<Rat> rat_from_string(const std::string& s) {
    if (s.empty()) return std::nullopt;
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rat(Int(s));
        }
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) return std::nullopt;
        return Rat(num, den);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

Rat Value::to_rat() const {
    if (is_int()) return Rat(as_int());
    if (is_rat()) return as_rat();
    fail(ErrorKind::TypeMismatch, "numeric value expected, got " + to_string());
}

std::string Value::to_string() const {
    struct Printer {
        std::string operator()(const Symbol& s) const { return std::string("'") + s.ch + "'"; }
        std::string operator()(const Int& i) const { return i.str(); }
        std::string operator()(const Rat& r) const { return rat_to_string(r); }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(const Tuple& t) const {
            std::ostringstream out;
            out << "(";
            for (size_t k = 0; k < t.size(); ++k) {
                if (k) out << ",";
                out << t[k].to_string();
            }
            out << ")";
            return out.str();
        }
    };
    return std::visit(Printer{}, storage_);
}

bool value_less(const Value& a, const Value& b) {
    if (a.storage().index() != b.storage().index())
        return a.storage().index() < b.storage().index();
    struct Cmp {
        const Value& b;
        bool operator()(const Symbol& x) const { return x.ch < b.as_symbol().ch; }
        bool operator()(const Int& x) const { return x < b.as_int(); }
        bool operator()(const Rat& x) const { return x < b.as_rat(); }
        bool operator()(bool x) const { return int(x) < int(b.as_bool()); }
        bool operator()(const Tuple& x) const {
            const Tuple& y = b.as_tuple();
            for (size_t k = 0; k < x.size() && k < y.size(); ++k) {
                if (x[k] != y[k]) return value_less(x[k], y[k]);
            }
            return x.size() < y.size();
        }
    };
    return std::visit(Cmp{b}, a.storage());
}

} // namespace uhatlab
