#include "uhatlab/logic.hpp"

#include <sstream>

namespace uhatlab {

namespace ltl {

static Ltl make(LtlNode::Storage node) {
    return std::make_shared<const LtlNode>(LtlNode{std::move(node)});
}

Ltl truth(bool b) { return b ? make(LtlTrue{}) : make(LtlFalse{}); }
Ltl letter(std::set<char> letters) { return make(LetterPred{std::move(letters)}); }
Ltl mon(std::string name) { return make(MonPred{std::move(name)}); }
Ltl negate(Ltl a) { return make(LtlNot{std::move(a)}); }
Ltl conj(Ltl a, Ltl b) { return make(LtlAnd{std::move(a), std::move(b)}); }
Ltl disj(Ltl a, Ltl b) { return make(LtlOr{std::move(a), std::move(b)}); }
Ltl next(Ltl a) { return make(LtlNext{std::move(a)}); }
Ltl until(Ltl a, Ltl b) { return make(LtlUntil{std::move(a), std::move(b)}); }
Ltl yesterday(Ltl a) { return make(LtlYesterday{std::move(a)}); }
Ltl since(Ltl a, Ltl b) { return make(LtlSince{std::move(a), std::move(b)}); }

} // namespace ltl

MonPredRegistry MonPredRegistry::standard() {
    MonPredRegistry reg;
    reg.families["even"] = [](int, int pos) { return pos % 2 == 0; };
    reg.families["odd"] = [](int, int pos) { return pos % 2 == 1; };
    reg.families["first"] = [](int, int pos) { return pos == 0; };
    reg.families["last"] = [](int n, int pos) { return pos == n - 1; };
    reg.families["middle"] = [](int n, int pos) { return 2 * pos == n - 1; };
    return reg;
}

bool MonPredRegistry::eval(const std::string& name, int n, int pos) const {
    auto it = families.find(name);
    if (it == families.end())
        fail(ErrorKind::UnknownMonPred, "no monadic predicate named '" + name + "'");
    return it->second(n, pos);
}

namespace {

bool ltl_walk(const Ltl& f, bool (*pred)(const LtlNode&)) {
    if (!f) return false;
    if (pred(*f)) return true;
    struct Walker {
        bool (*pred)(const LtlNode&);
        bool operator()(const LtlTrue&) const { return false; }
        bool operator()(const LtlFalse&) const { return false; }
        bool operator()(const LetterPred&) const { return false; }
        bool operator()(const MonPred&) const { return false; }
        bool operator()(const LtlNot& x) const { return ltl_walk(x.arg, pred); }
        bool operator()(const LtlAnd& x) const {
            return ltl_walk(x.lhs, pred) || ltl_walk(x.rhs, pred);
        }
        bool operator()(const LtlOr& x) const {
            return ltl_walk(x.lhs, pred) || ltl_walk(x.rhs, pred);
        }
        bool operator()(const LtlNext& x) const { return ltl_walk(x.arg, pred); }
        bool operator()(const LtlUntil& x) const {
            return ltl_walk(x.lhs, pred) || ltl_walk(x.rhs, pred);
        }
        bool operator()(const LtlYesterday& x) const { return ltl_walk(x.arg, pred); }
        bool operator()(const LtlSince& x) const {
            return ltl_walk(x.lhs, pred) || ltl_walk(x.rhs, pred);
        }
    };
    return std::visit(Walker{pred}, f->node);
}

} // namespace

bool contains_past(const Ltl& f) {
    return ltl_walk(f, [](const LtlNode& n) {
        return std::holds_alternative<LtlYesterday>(n.node) ||
               std::holds_alternative<LtlSince>(n.node);
    });
}

bool contains_future(const Ltl& f) {
    return ltl_walk(f, [](const LtlNode& n) {
        return std::holds_alternative<LtlNext>(n.node) ||
               std::holds_alternative<LtlUntil>(n.node);
    });
}

bool eval_ltl(const Ltl& f, const Word& w, int i, const MonPredRegistry& env) {
    int n = int(w.size());
    if (i < 0 || i >= n)
        fail(ErrorKind::PositionOutOfRange,
             "position " + std::to_string(i) + " on a length-" + std::to_string(n) + " word");
    struct Evaluator {
        const Word& w;
        int i;
        int n;
        const MonPredRegistry& env;

        bool at(const Ltl& g, int pos) const { return eval_ltl(g, w, pos, env); }

        bool operator()(const LtlTrue&) const { return true; }
        bool operator()(const LtlFalse&) const { return false; }
        bool operator()(const LetterPred& x) const { return x.letters.count(w[i]) > 0; }
        bool operator()(const MonPred& x) const { return env.eval(x.name, n, i); }
        bool operator()(const LtlNot& x) const { return !at(x.arg, i); }
        bool operator()(const LtlAnd& x) const { return at(x.lhs, i) && at(x.rhs, i); }
        bool operator()(const LtlOr& x) const { return at(x.lhs, i) || at(x.rhs, i); }
        bool operator()(const LtlNext& x) const { return i < n - 1 && at(x.arg, i + 1); }
        bool operator()(const LtlUntil& x) const {
            // strict: some j > i satisfies rhs with lhs holding on (i, j)
            for (int j = i + 1; j < n; ++j) {
                if (at(x.rhs, j)) return true;
                if (!at(x.lhs, j)) return false;
            }
            return false;
        }
        bool operator()(const LtlYesterday& x) const { return i > 0 && at(x.arg, i - 1); }
        bool operator()(const LtlSince& x) const {
            // strict: some j < i satisfies rhs with lhs holding on (j, i)
            for (int j = i - 1; j >= 0; --j) {
                if (at(x.rhs, j)) return true;
                if (!at(x.lhs, j)) return false;
            }
            return false;
        }
    };
    return std::visit(Evaluator{w, i, n, env}, f->node);
}

bool ltl_recognize(const Ltl& f, const Word& w, LtlMode mode, const MonPredRegistry& env) {
    if (w.empty()) fail(ErrorKind::EmptyWord, "LTL recognition is undefined on the empty word");
    if (mode == LtlMode::FltlAtFirst) {
        if (contains_past(f))
            fail(ErrorKind::ModeFormulaMismatch, "FLTL mode forbids Y and S operators");
        return eval_ltl(f, w, 0, env);
    }
    if (contains_future(f))
        fail(ErrorKind::ModeFormulaMismatch, "PLTL mode forbids X and U operators");
    return eval_ltl(f, w, int(w.size()) - 1, env);
}

std::string ltl_to_string(const Ltl& f) {
    struct Printer {
        std::string operator()(const LtlTrue&) const { return "true"; }
        std::string operator()(const LtlFalse&) const { return "false"; }
        std::string operator()(const LetterPred& x) const {
            std::string out = "[";
            for (char c : x.letters) out += c;
            return out + "]";
        }
        std::string operator()(const MonPred& x) const { return "$" + x.name; }
        std::string operator()(const LtlNot& x) const { return "!" + ltl_to_string(x.arg); }
        std::string operator()(const LtlAnd& x) const {
            return "(" + ltl_to_string(x.lhs) + " & " + ltl_to_string(x.rhs) + ")";
        }
        std::string operator()(const LtlOr& x) const {
            return "(" + ltl_to_string(x.lhs) + " | " + ltl_to_string(x.rhs) + ")";
        }
        std::string operator()(const LtlNext& x) const { return "X " + ltl_to_string(x.arg); }
        std::string operator()(const LtlUntil& x) const {
            return "(" + ltl_to_string(x.lhs) + " U " + ltl_to_string(x.rhs) + ")";
        }
        std::string operator()(const LtlYesterday& x) const { return "Y " + ltl_to_string(x.arg); }
        std::string operator()(const LtlSince& x) const {
            return "(" + ltl_to_string(x.lhs) + " S " + ltl_to_string(x.rhs) + ")";
        }
    };
    return std::visit(Printer{}, f->node);
}

namespace fo {

static Fo make(FoNode::Storage node) {
    return std::make_shared<const FoNode>(FoNode{std::move(node)});
}

Fo truth(bool b) { return b ? make(FoTrue{}) : make(FoFalse{}); }
Fo letter_at(std::set<char> letters, std::string var) {
    return make(LetterAt{std::move(letters), std::move(var)});
}
Fo mon_at(std::string name, std::string var) {
    return make(MonPredAt{std::move(name), std::move(var)});
}
Fo less(std::string a, std::string b) { return make(Less{std::move(a), std::move(b)}); }
Fo negate(Fo a) { return make(FoNot{std::move(a)}); }
Fo conj(Fo a, Fo b) { return make(FoAnd{std::move(a), std::move(b)}); }
Fo disj(Fo a, Fo b) { return make(FoOr{std::move(a), std::move(b)}); }
Fo exists(std::string var, Fo body) { return make(Exists{std::move(var), std::move(body)}); }
Fo forall(std::string var, Fo body) { return make(ForAll{std::move(var), std::move(body)}); }

} // namespace fo

namespace {

void collect_free(const Fo& f, std::set<std::string>& bound, std::set<std::string>& free) {
    struct Collector {
        std::set<std::string>& bound;
        std::set<std::string>& free;
        void var(const std::string& v) const {
            if (!bound.count(v)) free.insert(v);
        }
        void operator()(const FoTrue&) const {}
        void operator()(const FoFalse&) const {}
        void operator()(const LetterAt& x) const { var(x.var); }
        void operator()(const MonPredAt& x) const { var(x.var); }
        void operator()(const Less& x) const {
            var(x.lhs);
            var(x.rhs);
        }
        void operator()(const FoNot& x) const { collect_free(x.arg, bound, free); }
        void operator()(const FoAnd& x) const {
            collect_free(x.lhs, bound, free);
            collect_free(x.rhs, bound, free);
        }
        void operator()(const FoOr& x) const {
            collect_free(x.lhs, bound, free);
            collect_free(x.rhs, bound, free);
        }
        void operator()(const Exists& x) const {
            bool fresh = bound.insert(x.var).second;
            collect_free(x.body, bound, free);
            if (fresh) bound.erase(x.var);
        }
        void operator()(const ForAll& x) const {
            bool fresh = bound.insert(x.var).second;
            collect_free(x.body, bound, free);
            if (fresh) bound.erase(x.var);
        }
    };
    std::visit(Collector{bound, free}, f->node);
}

bool eval_fo_env(const Fo& f, const Word& w, const MonPredRegistry& env,
                 std::map<std::string, int>& binding) {
    int n = int(w.size());
    struct Evaluator {
        const Word& w;
        const MonPredRegistry& env;
        std::map<std::string, int>& binding;
        int n;

        int pos(const std::string& v) const {
            auto it = binding.find(v);
            if (it == binding.end()) fail(ErrorKind::FreeVariable, "unbound variable " + v);
            return it->second;
        }
        bool quantify(const std::string& v, const Fo& body, bool existential) const {
            auto it = binding.find(v);
            std::optional<int> saved =
                it != binding.end() ? std::optional<int>(it->second) : std::nullopt;
            bool result = !existential;
            for (int p = 0; p < n; ++p) {
                binding[v] = p;
                bool hit = eval_fo_env(body, w, env, binding);
                if (existential && hit) {
                    result = true;
                    break;
                }
                if (!existential && !hit) {
                    result = false;
                    break;
                }
            }
            if (saved) binding[v] = *saved; else binding.erase(v);
            return result;
        }
        bool operator()(const FoTrue&) const { return true; }
        bool operator()(const FoFalse&) const { return false; }
        bool operator()(const LetterAt& x) const { return x.letters.count(w[pos(x.var)]) > 0; }
        bool operator()(const MonPredAt& x) const { return env.eval(x.name, n, pos(x.var)); }
        bool operator()(const Less& x) const { return pos(x.lhs) < pos(x.rhs); }
        bool operator()(const FoNot& x) const { return !eval_fo_env(x.arg, w, env, binding); }
        bool operator()(const FoAnd& x) const {
            return eval_fo_env(x.lhs, w, env, binding) && eval_fo_env(x.rhs, w, env, binding);
        }
        bool operator()(const FoOr& x) const {
            return eval_fo_env(x.lhs, w, env, binding) || eval_fo_env(x.rhs, w, env, binding);
        }
        bool operator()(const Exists& x) const { return quantify(x.var, x.body, true); }
        bool operator()(const ForAll& x) const { return quantify(x.var, x.body, false); }
    };
    return std::visit(Evaluator{w, env, binding, n}, f->node);
}

} // namespace

std::set<std::string> fo_free_variables(const Fo& f) {
    std::set<std::string> bound, free;
    collect_free(f, bound, free);
    return free;
}

bool eval_fo(const Fo& f, const Word& w, const MonPredRegistry& env) {
    auto free = fo_free_variables(f);
    if (!free.empty())
        fail(ErrorKind::FreeVariable, "formula has free variable '" + *free.begin() + "'");
    if (w.empty()) fail(ErrorKind::EmptyWord, "FO evaluation is undefined on the empty word");
    std::map<std::string, int> binding;
    return eval_fo_env(f, w, env, binding);
}

std::string fo_to_string(const Fo& f) {
    struct Printer {
        std::string operator()(const FoTrue&) const { return "true"; }
        std::string operator()(const FoFalse&) const { return "false"; }
        std::string operator()(const LetterAt& x) const {
            std::string out = "[";
            for (char c : x.letters) out += c;
            return out + "](" + x.var + ")";
        }
        std::string operator()(const MonPredAt& x) const { return "$" + x.name + "(" + x.var + ")"; }
        std::string operator()(const Less& x) const { return "(" + x.lhs + " < " + x.rhs + ")"; }
        std::string operator()(const FoNot& x) const { return "!" + fo_to_string(x.arg); }
        std::string operator()(const FoAnd& x) const {
            return "(" + fo_to_string(x.lhs) + " & " + fo_to_string(x.rhs) + ")";
        }
        std::string operator()(const FoOr& x) const {
            return "(" + fo_to_string(x.lhs) + " | " + fo_to_string(x.rhs) + ")";
        }
        std::string operator()(const Exists& x) const {
            return "(exists " + x.var + ". " + fo_to_string(x.body) + ")";
        }
        std::string operator()(const ForAll& x) const {
            return "(forall " + x.var + ". " + fo_to_string(x.body) + ")";
        }
    };
    return std::visit(Printer{}, f->node);
}

namespace {

using namespace ltl;

Ltl implies(Ltl a, Ltl b) { return disj(negate(std::move(a)), std::move(b)); }

// psi holds here and at every strictly later position.
Ltl here_and_globally(Ltl psi) {
    return conj(psi, negate(until(truth(true), negate(psi))));
}

} // namespace

Ltl ltl_ab_star() {
    // no 'b' immediately followed by 'a'
    return here_and_globally(negate(conj(letter({'b'}), next(letter({'a'})))));
}

Fo fo_ab_star() {
    using namespace fo;
    // forall x forall y: x < y -> !(b(x) & a(y))
    return forall("x", forall("y", disj(negate(less("x", "y")),
                                        negate(conj(letter_at({'b'}, "x"),
                                                    letter_at({'a'}, "y"))))));
}

Ltl ltl_dyck1(int depth_bound) {
    Ltl open = letter({'('});
    Ltl close = letter({')'});
    Ltl is_end = negate(next(truth(true)));
    Ltl last_is_close = disj(conj(is_end, close), until(truth(true), conj(is_end, close)));

    if (depth_bound == 1) {
        // alternating ()()...(): starts '(', ends ')', no equal adjacent pair
        Ltl no_doubles = negate(disj(conj(open, next(open)), conj(close, next(close))));
        return conj(open, conj(last_is_close, here_and_globally(no_doubles)));
    }
    if (depth_bound != 2)
        fail(ErrorKind::InvalidDepth, "LTL fixtures exist for depth bounds 1 and 2 only");

    // Depth bound 2: adjacent equal pairs ("doubles") must alternate
    // OO CC OO CC ... starting with OO and ending with CC, with no triples.
    Ltl oo = conj(open, next(open));
    Ltl cc = conj(close, next(close));
    Ltl double_start = disj(oo, cc);
    Ltl no_triples =
        conj(negate(conj(open, next(conj(open, next(open))))),
             negate(conj(close, next(conj(close, next(close))))));
    // after an OO, a CC follows with no double starting strictly in between
    Ltl r3 = implies(oo, next(until(negate(double_start), cc)));
    // after a CC, the next double (if any) is an OO
    Ltl r4b = implies(cc, next(negate(until(negate(oo), cc))));
    // the first double overall is an OO
    Ltl r4a = disj(oo, negate(until(negate(oo), cc)));
    return conj(open,
                conj(last_is_close,
                     conj(r4a, here_and_globally(conj(no_triples, conj(r3, r4b))))));
}

Fo fo_dyck1_depth1() {
    using namespace fo;
    // successor: x < y and nothing in between
    auto succ = [](const std::string& x, const std::string& y) {
        return conj(less(x, y), negate(exists("z", conj(less(x, "z"), less("z", y)))));
    };
    Fo first_open = forall("x", disj(exists("y", less("y", "x")), letter_at({'('}, "x")));
    Fo last_close = forall("x", disj(exists("y", less("x", "y")), letter_at({')'}, "x")));
    Fo alternate = forall(
        "x", forall("y", disj(negate(succ("x", "y")),
                              disj(conj(letter_at({'('}, "x"), letter_at({')'}, "y")),
                                   conj(letter_at({')'}, "x"), letter_at({'('}, "y"))))));
    return conj(first_open, conj(last_close, alternate));
}

} // namespace uhatlab
