#include "uhatlab/expr.hpp"

#include <sstream>

namespace uhatlab {

namespace ex {

static Expr make(ExprNode::Storage node) {
    return std::make_shared<const ExprNode>(ExprNode{std::move(node)});
}

Expr rat(const Rat& r) { return make(RatLit{r}); }
Expr rat(long long num, long long den) { return make(RatLit{Rat(Int(num), Int(den))}); }
Expr intlit(const Int& v) { return make(IntLit{v}); }
Expr sym(char c) { return make(SymLit{Symbol{c}}); }
Expr boolean(bool b) { return make(BoolLit{b}); }
Expr var(Side side, int layer) { return make(VarRef{side, layer}); }
Expr pos_i() { return make(PosI{}); }
Expr pos_j() { return make(PosJ{}); }
Expr len() { return make(Len{}); }
Expr add(Expr a, Expr b) { return make(Add{std::move(a), std::move(b)}); }
Expr sub(Expr a, Expr b) { return make(Sub{std::move(a), std::move(b)}); }
Expr mul(Expr a, Expr b) { return make(Mul{std::move(a), std::move(b)}); }
Expr neg(Expr a) { return make(Neg{std::move(a)}); }
Expr pow(Expr base, Expr exponent) { return make(Pow{std::move(base), std::move(exponent)}); }
Expr eq(Expr a, Expr b) { return make(Eq{std::move(a), std::move(b)}); }
Expr lt(Expr a, Expr b) { return make(Lt{std::move(a), std::move(b)}); }
Expr logic_and(Expr a, Expr b) { return make(And{std::move(a), std::move(b)}); }
Expr logic_or(Expr a, Expr b) { return make(Or{std::move(a), std::move(b)}); }
Expr logic_not(Expr a) { return make(Not{std::move(a)}); }
Expr ite(Expr c, Expr t, Expr f) {
    return make(IfThenElse{std::move(c), std::move(t), std::move(f)});
}
Expr tuple(std::vector<Expr> items) { return make(TupleMake{std::move(items)}); }
Expr get(Expr tuple, int index) { return make(TupleGet{std::move(tuple), index}); }

Expr lit(const Value& v) {
    struct Builder {
        Expr operator()(const Symbol& s) const { return sym(s.ch); }
        Expr operator()(const Int& i) const { return intlit(i); }
        Expr operator()(const Rat& r) const { return rat(r); }
        Expr operator()(bool b) const { return boolean(b); }
        Expr operator()(const Tuple& t) const {
            std::vector<Expr> items;
            items.reserve(t.size());
            for (const Value& item : t) items.push_back(lit(item));
            return tuple(std::move(items));
        }
    };
    return std::visit(Builder{}, v.storage());
}

} // namespace ex

bool expr_equal(const Expr& a, const Expr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->node.index() != b->node.index()) return false;
    struct Cmp {
        const ExprNode::Storage& other;
        bool operator()(const RatLit& x) const { return x.value == std::get<RatLit>(other).value; }
        bool operator()(const IntLit& x) const { return x.value == std::get<IntLit>(other).value; }
        bool operator()(const SymLit& x) const { return x.value == std::get<SymLit>(other).value; }
        bool operator()(const BoolLit& x) const { return x.value == std::get<BoolLit>(other).value; }
        bool operator()(const VarRef& x) const {
            const auto& y = std::get<VarRef>(other);
            return x.side == y.side && x.layer == y.layer;
        }
        bool operator()(const PosI&) const { return true; }
        bool operator()(const PosJ&) const { return true; }
        bool operator()(const Len&) const { return true; }
        bool operator()(const Add& x) const {
            const auto& y = std::get<Add>(other);
            return expr_equal(x.lhs, y.lhs) && expr_equal(x.rhs, y.rhs);
        }
        bool operator()(const Sub& x) const {
            const auto& y = std::get<Sub>(other);
            return expr_equal(x.lhs, y.lhs) && expr_equal(x.rhs, y.rhs);
        }
        bool operator()(const Mul& x) const {
            const auto& y = std::get<Mul>(other);
            return expr_equal(x.lhs, y.lhs) && expr_equal(x.rhs, y.rhs);
        }
        bool operator()(const Neg& x) const { return expr_equal(x.arg, std::get<Neg>(other).arg); }
        bool operator()(const Pow& x) const {
            const auto& y = std::get<Pow>(other);
            return expr_equal(x.base, y.base) && expr_equal(x.exponent, y.exponent);
        }
        bool operator()(const Eq& x) const {
            const auto& y = std::get<Eq>(other);
            return expr_equal(x.lhs, y.lhs) && expr_equal(x.rhs, y.rhs);
        }
        bool operator()(const Lt& x) const {
            const auto& y = std::get<Lt>(other);
            return expr_equal(x.lhs, y.lhs) && expr_equal(x.rhs, y.rhs);
        }
        bool operator()(const And& x) const {
            const auto& y = std::get<And>(other);
            return expr_equal(x.lhs, y.lhs) && expr_equal(x.rhs, y.rhs);
        }
        bool operator()(const Or& x) const {
            const auto& y = std::get<Or>(other);
            return expr_equal(x.lhs, y.lhs) && expr_equal(x.rhs, y.rhs);
        }
        bool operator()(const Not& x) const { return expr_equal(x.arg, std::get<Not>(other).arg); }
        bool operator()(const IfThenElse& x) const {
            const auto& y = std::get<IfThenElse>(other);
            return expr_equal(x.cond, y.cond) && expr_equal(x.then_branch, y.then_branch) &&
                   expr_equal(x.else_branch, y.else_branch);
        }
        bool operator()(const TupleMake& x) const {
            const auto& y = std::get<TupleMake>(other);
            if (x.items.size() != y.items.size()) return false;
            for (size_t k = 0; k < x.items.size(); ++k)
                if (!expr_equal(x.items[k], y.items[k])) return false;
            return true;
        }
        bool operator()(const TupleGet& x) const {
            const auto& y = std::get<TupleGet>(other);
            return x.index == y.index && expr_equal(x.tuple, y.tuple);
        }
    };
    return std::visit(Cmp{b->node}, a->node);
}

namespace {

// Applies fn to every node; fn returning true stops the walk early.
bool walk(const Expr& e, const std::function<bool(const ExprNode&)>& fn) {
    if (!e) return false;
    if (fn(*e)) return true;
    struct Walker {
        const std::function<bool(const ExprNode&)>& fn;
        bool operator()(const RatLit&) const { return false; }
        bool operator()(const IntLit&) const { return false; }
        bool operator()(const SymLit&) const { return false; }
        bool operator()(const BoolLit&) const { return false; }
        bool operator()(const VarRef&) const { return false; }
        bool operator()(const PosI&) const { return false; }
        bool operator()(const PosJ&) const { return false; }
        bool operator()(const Len&) const { return false; }
        bool operator()(const Add& x) const { return walk(x.lhs, fn) || walk(x.rhs, fn); }
        bool operator()(const Sub& x) const { return walk(x.lhs, fn) || walk(x.rhs, fn); }
        bool operator()(const Mul& x) const { return walk(x.lhs, fn) || walk(x.rhs, fn); }
        bool operator()(const Neg& x) const { return walk(x.arg, fn); }
        bool operator()(const Pow& x) const { return walk(x.base, fn) || walk(x.exponent, fn); }
        bool operator()(const Eq& x) const { return walk(x.lhs, fn) || walk(x.rhs, fn); }
        bool operator()(const Lt& x) const { return walk(x.lhs, fn) || walk(x.rhs, fn); }
        bool operator()(const And& x) const { return walk(x.lhs, fn) || walk(x.rhs, fn); }
        bool operator()(const Or& x) const { return walk(x.lhs, fn) || walk(x.rhs, fn); }
        bool operator()(const Not& x) const { return walk(x.arg, fn); }
        bool operator()(const IfThenElse& x) const {
            return walk(x.cond, fn) || walk(x.then_branch, fn) || walk(x.else_branch, fn);
        }
        bool operator()(const TupleMake& x) const {
            for (const Expr& item : x.items)
                if (walk(item, fn)) return true;
            return false;
        }
        bool operator()(const TupleGet& x) const { return walk(x.tuple, fn); }
    };
    return std::visit(Walker{fn}, e->node);
}

// Structural rewrite: node_fn may return a replacement for a node; children
// are rewritten first-to-last when no replacement fires.
Expr rewrite(const Expr& e, const std::function<std::optional<Expr>(const ExprNode&)>& node_fn) {
    if (!e) return e;
    if (auto replaced = node_fn(*e)) return *replaced;
    struct Rewriter {
        const Expr& self;
        const std::function<std::optional<Expr>(const ExprNode&)>& fn;
        Expr operator()(const RatLit&) const { return self; }
        Expr operator()(const IntLit&) const { return self; }
        Expr operator()(const SymLit&) const { return self; }
        Expr operator()(const BoolLit&) const { return self; }
        Expr operator()(const VarRef&) const { return self; }
        Expr operator()(const PosI&) const { return self; }
        Expr operator()(const PosJ&) const { return self; }
        Expr operator()(const Len&) const { return self; }
        Expr operator()(const Add& x) const { return ex::add(rewrite(x.lhs, fn), rewrite(x.rhs, fn)); }
        Expr operator()(const Sub& x) const { return ex::sub(rewrite(x.lhs, fn), rewrite(x.rhs, fn)); }
        Expr operator()(const Mul& x) const { return ex::mul(rewrite(x.lhs, fn), rewrite(x.rhs, fn)); }
        Expr operator()(const Neg& x) const { return ex::neg(rewrite(x.arg, fn)); }
        Expr operator()(const Pow& x) const {
            return ex::pow(rewrite(x.base, fn), rewrite(x.exponent, fn));
        }
        Expr operator()(const Eq& x) const { return ex::eq(rewrite(x.lhs, fn), rewrite(x.rhs, fn)); }
        Expr operator()(const Lt& x) const { return ex::lt(rewrite(x.lhs, fn), rewrite(x.rhs, fn)); }
        Expr operator()(const And& x) const {
            return ex::logic_and(rewrite(x.lhs, fn), rewrite(x.rhs, fn));
        }
        Expr operator()(const Or& x) const {
            return ex::logic_or(rewrite(x.lhs, fn), rewrite(x.rhs, fn));
        }
        Expr operator()(const Not& x) const { return ex::logic_not(rewrite(x.arg, fn)); }
        Expr operator()(const IfThenElse& x) const {
            return ex::ite(rewrite(x.cond, fn), rewrite(x.then_branch, fn),
                           rewrite(x.else_branch, fn));
        }
        Expr operator()(const TupleMake& x) const {
            std::vector<Expr> items;
            items.reserve(x.items.size());
            for (const Expr& item : x.items) items.push_back(rewrite(item, fn));
            return ex::tuple(std::move(items));
        }
        Expr operator()(const TupleGet& x) const { return ex::get(rewrite(x.tuple, fn), x.index); }
    };
    return std::visit(Rewriter{e, node_fn}, e->node);
}

} // namespace

bool references_j(const Expr& e) {
    return walk(e, [](const ExprNode& n) {
        if (const auto* v = std::get_if<VarRef>(&n.node)) return v->side == Side::J;
        return std::holds_alternative<PosJ>(n.node);
    });
}

bool references_positions(const Expr& e) {
    return walk(e, [](const ExprNode& n) {
        return std::holds_alternative<PosI>(n.node) || std::holds_alternative<PosJ>(n.node) ||
               std::holds_alternative<Len>(n.node);
    });
}

int max_layer_ref(const Expr& e) {
    int result = -1;
    walk(e, [&result](const ExprNode& n) {
        if (const auto* v = std::get_if<VarRef>(&n.node))
            if (v->layer > result) result = v->layer;
        return false;
    });
    return result;
}

Expr remap_layers(const Expr& e, const std::vector<int>& map) {
    return rewrite(e, [&map](const ExprNode& n) -> std::optional<Expr> {
        if (const auto* v = std::get_if<VarRef>(&n.node)) {
            if (v->layer < 0 || size_t(v->layer) >= map.size())
                fail(ErrorKind::Internal, "layer remap out of range");
            return ex::var(v->side, map[v->layer]);
        }
        return std::nullopt;
    });
}

Expr swap_sides(const Expr& e) {
    return rewrite(e, [](const ExprNode& n) -> std::optional<Expr> {
        if (const auto* v = std::get_if<VarRef>(&n.node))
            return ex::var(v->side == Side::I ? Side::J : Side::I, v->layer);
        if (std::holds_alternative<PosI>(n.node)) return ex::pos_j();
        if (std::holds_alternative<PosJ>(n.node)) return ex::pos_i();
        return std::nullopt;
    });
}

Expr project_layer0(const Expr& e, int index) {
    return rewrite(e, [index](const ExprNode& n) -> std::optional<Expr> {
        if (const auto* v = std::get_if<VarRef>(&n.node))
            if (v->layer == 0) return ex::get(ex::var(v->side, 0), index);
        return std::nullopt;
    });
}

std::string expr_to_string(const Expr& e) {
    if (!e) return "<null>";
    struct Printer {
        std::string operator()(const RatLit& x) const { return rat_to_string(x.value); }
        std::string operator()(const IntLit& x) const { return x.value.str(); }
        std::string operator()(const SymLit& x) const { return std::string("'") + x.value.ch + "'"; }
        std::string operator()(const BoolLit& x) const { return x.value ? "true" : "false"; }
        std::string operator()(const VarRef& x) const {
            return "L" + std::to_string(x.layer) + (x.side == Side::I ? "[i]" : "[j]");
        }
        std::string operator()(const PosI&) const { return "i"; }
        std::string operator()(const PosJ&) const { return "j"; }
        std::string operator()(const Len&) const { return "n"; }
        std::string operator()(const Add& x) const {
            return "(" + expr_to_string(x.lhs) + "+" + expr_to_string(x.rhs) + ")";
        }
        std::string operator()(const Sub& x) const {
            return "(" + expr_to_string(x.lhs) + "-" + expr_to_string(x.rhs) + ")";
        }
        std::string operator()(const Mul& x) const {
            return "(" + expr_to_string(x.lhs) + "*" + expr_to_string(x.rhs) + ")";
        }
        std::string operator()(const Neg& x) const { return "(-" + expr_to_string(x.arg) + ")"; }
        std::string operator()(const Pow& x) const {
            return "pow(" + expr_to_string(x.base) + "," + expr_to_string(x.exponent) + ")";
        }
        std::string operator()(const Eq& x) const {
            return "(" + expr_to_string(x.lhs) + "==" + expr_to_string(x.rhs) + ")";
        }
        std::string operator()(const Lt& x) const {
            return "(" + expr_to_string(x.lhs) + "<" + expr_to_string(x.rhs) + ")";
        }
        std::string operator()(const And& x) const {
            return "(" + expr_to_string(x.lhs) + "&&" + expr_to_string(x.rhs) + ")";
        }
        std::string operator()(const Or& x) const {
            return "(" + expr_to_string(x.lhs) + "||" + expr_to_string(x.rhs) + ")";
        }
        std::string operator()(const Not& x) const { return "(!" + expr_to_string(x.arg) + ")"; }
        std::string operator()(const IfThenElse& x) const {
            return "if(" + expr_to_string(x.cond) + "," + expr_to_string(x.then_branch) + "," +
                   expr_to_string(x.else_branch) + ")";
        }
        std::string operator()(const TupleMake& x) const {
            std::string out = "tuple(";
            for (size_t k = 0; k < x.items.size(); ++k) {
                if (k) out += ",";
                out += expr_to_string(x.items[k]);
            }
            return out + ")";
        }
        std::string operator()(const TupleGet& x) const {
            return expr_to_string(x.tuple) + "." + std::to_string(x.index);
        }
    };
    return std::visit(Printer{}, e->node);
}

} // namespace uhatlab
