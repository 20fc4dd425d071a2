#include "uhatlab/serialize.hpp"

#include "json.hpp"

namespace uhatlab {

using nlohmann::json;
using namespace ex;

namespace {

json rat_to_j(const Rat& r) {
    return json{{"num", rat_num(r).str()}, {"den", rat_den(r).str()}};
}

Rat rat_from_j(const json& j) {
    return Rat(Int(j.at("num").get<std::string>()), Int(j.at("den").get<std::string>()));
}

json value_to_j(const Value& v) {
    struct Enc {
        json operator()(const Symbol& s) const {
            return json{{"t", "sym"}, {"v", std::string(1, s.ch)}};
        }
        json operator()(const Int& i) const { return json{{"t", "int"}, {"v", i.str()}}; }
        json operator()(const Rat& r) const {
            return json{{"t", "rat"}, {"num", rat_num(r).str()}, {"den", rat_den(r).str()}};
        }
        json operator()(bool b) const { return json{{"t", "bool"}, {"v", b}}; }
        json operator()(const Tuple& t) const {
            json items = json::array();
            for (const Value& item : t) items.push_back(value_to_j(item));
            return json{{"t", "tuple"}, {"v", items}};
        }
    };
    return std::visit(Enc{}, v.storage());
}

Value value_from_j(const json& j) {
    std::string t = j.at("t").get<std::string>();
    if (t == "sym") {
        std::string s = j.at("v").get<std::string>();
        if (s.size() != 1) fail(ErrorKind::SyntaxError, "symbol must be one character");
        return Value::symbol(s[0]);
    }
    if (t == "int") return Value(Int(j.at("v").get<std::string>()));
    if (t == "rat") return Value(rat_from_j(j));
    if (t == "bool") return Value(j.at("v").get<bool>());
    if (t == "tuple") {
        Tuple items;
        for (const json& item : j.at("v")) items.push_back(value_from_j(item));
        return Value(std::move(items));
    }
    fail(ErrorKind::SyntaxError, "unknown value tag '" + t + "'");
}

json expr_to_j(const Expr& e) {
    struct Enc {
        json operator()(const RatLit& x) const {
            return json{{"op", "rat"}, {"num", rat_num(x.value).str()},
                        {"den", rat_den(x.value).str()}};
        }
        json operator()(const IntLit& x) const { return json{{"op", "int"}, {"v", x.value.str()}}; }
        json operator()(const SymLit& x) const {
            return json{{"op", "sym"}, {"v", std::string(1, x.value.ch)}};
        }
        json operator()(const BoolLit& x) const { return json{{"op", "bool"}, {"v", x.value}}; }
        json operator()(const VarRef& x) const {
            return json{{"op", "var"}, {"side", x.side == Side::I ? "i" : "j"}, {"layer", x.layer}};
        }
        json operator()(const PosI&) const { return json{{"op", "i"}}; }
        json operator()(const PosJ&) const { return json{{"op", "j"}}; }
        json operator()(const Len&) const { return json{{"op", "n"}}; }
        json operator()(const Add& x) const {
            return json{{"op", "add"}, {"a", expr_to_j(x.lhs)}, {"b", expr_to_j(x.rhs)}};
        }
        json operator()(const Sub& x) const {
            return json{{"op", "sub"}, {"a", expr_to_j(x.lhs)}, {"b", expr_to_j(x.rhs)}};
        }
        json operator()(const Mul& x) const {
            return json{{"op", "mul"}, {"a", expr_to_j(x.lhs)}, {"b", expr_to_j(x.rhs)}};
        }
        json operator()(const Neg& x) const { return json{{"op", "neg"}, {"a", expr_to_j(x.arg)}}; }
        json operator()(const Pow& x) const {
            return json{{"op", "pow"}, {"base", expr_to_j(x.base)}, {"exp", expr_to_j(x.exponent)}};
        }
        json operator()(const Eq& x) const {
            return json{{"op", "eq"}, {"a", expr_to_j(x.lhs)}, {"b", expr_to_j(x.rhs)}};
        }
        json operator()(const Lt& x) const {
            return json{{"op", "lt"}, {"a", expr_to_j(x.lhs)}, {"b", expr_to_j(x.rhs)}};
        }
        json operator()(const And& x) const {
            return json{{"op", "and"}, {"a", expr_to_j(x.lhs)}, {"b", expr_to_j(x.rhs)}};
        }
        json operator()(const Or& x) const {
            return json{{"op", "or"}, {"a", expr_to_j(x.lhs)}, {"b", expr_to_j(x.rhs)}};
        }
        json operator()(const Not& x) const { return json{{"op", "not"}, {"a", expr_to_j(x.arg)}}; }
        json operator()(const IfThenElse& x) const {
            return json{{"op", "if"}, {"c", expr_to_j(x.cond)}, {"t", expr_to_j(x.then_branch)},
                        {"f", expr_to_j(x.else_branch)}};
        }
        json operator()(const TupleMake& x) const {
            json items = json::array();
            for (const Expr& item : x.items) items.push_back(expr_to_j(item));
            return json{{"op", "tuple"}, {"items", items}};
        }
        json operator()(const TupleGet& x) const {
            return json{{"op", "get"}, {"tuple", expr_to_j(x.tuple)}, {"index", x.index}};
        }
    };
    if (!e) fail(ErrorKind::Internal, "null expression");
    return std::visit(Enc{}, e->node);
}

Expr expr_from_j(const json& j) {
    std::string op = j.at("op").get<std::string>();
    if (op == "rat") return rat(rat_from_j(j));
    if (op == "int") return intlit(Int(j.at("v").get<std::string>()));
    if (op == "sym") {
        std::string s = j.at("v").get<std::string>();
        if (s.size() != 1) fail(ErrorKind::SyntaxError, "symbol must be one character");
        return sym(s[0]);
    }
    if (op == "bool") return boolean(j.at("v").get<bool>());
    if (op == "var")
        return var(j.at("side").get<std::string>() == "i" ? Side::I : Side::J,
                   j.at("layer").get<int>());
    if (op == "i") return pos_i();
    if (op == "j") return pos_j();
    if (op == "n") return len();
    if (op == "add") return add(expr_from_j(j.at("a")), expr_from_j(j.at("b")));
    if (op == "sub") return sub(expr_from_j(j.at("a")), expr_from_j(j.at("b")));
    if (op == "mul") return mul(expr_from_j(j.at("a")), expr_from_j(j.at("b")));
    if (op == "neg") return neg(expr_from_j(j.at("a")));
    if (op == "pow") return pow(expr_from_j(j.at("base")), expr_from_j(j.at("exp")));
    if (op == "eq") return eq(expr_from_j(j.at("a")), expr_from_j(j.at("b")));
    if (op == "lt") return lt(expr_from_j(j.at("a")), expr_from_j(j.at("b")));
    if (op == "and") return logic_and(expr_from_j(j.at("a")), expr_from_j(j.at("b")));
    if (op == "or") return logic_or(expr_from_j(j.at("a")), expr_from_j(j.at("b")));
    if (op == "not") return logic_not(expr_from_j(j.at("a")));
    if (op == "if")
        return ite(expr_from_j(j.at("c")), expr_from_j(j.at("t")), expr_from_j(j.at("f")));
    if (op == "tuple") {
        std::vector<Expr> items;
        for (const json& item : j.at("items")) items.push_back(expr_from_j(item));
        return tuple(std::move(items));
    }
    if (op == "get") return get(expr_from_j(j.at("tuple")), j.at("index").get<int>());
    fail(ErrorKind::SyntaxError, "unknown expression op '" + op + "'");
}

json score_to_j(const ScoreSpec& score) {
    struct Enc {
        json operator()(const ExprScore& s) const {
            return json{{"kind", "expr"}, {"expr", expr_to_j(s.expr)}};
        }
        json operator()(const TableScore& s) const {
            json rows = json::array(), cols = json::array(), entries = json::array();
            for (const Value& v : s.rows) rows.push_back(value_to_j(v));
            for (const Value& v : s.cols) cols.push_back(value_to_j(v));
            for (const auto& row : s.entries) {
                json jrow = json::array();
                for (const Rat& r : row) jrow.push_back(rat_to_j(r));
                entries.push_back(jrow);
            }
            return json{{"kind", "table"}, {"key", expr_to_j(s.key)}, {"rows", rows},
                        {"cols", cols}, {"entries", entries}};
        }
        json operator()(const SeparableScore& s) const {
            json terms = json::array();
            for (const auto& term : s.terms)
                terms.push_back(json{{"f", expr_to_j(term.f)}, {"g", expr_to_j(term.g)}});
            return json{{"kind", "separable"}, {"terms", terms},
                        {"context_layers", s.context_layers}};
        }
        json operator()(const BilinearScore& s) const {
            json matrix = json::array();
            for (const auto& row : s.matrix) {
                json jrow = json::array();
                for (const Rat& r : row) jrow.push_back(rat_to_j(r));
                matrix.push_back(jrow);
            }
            return json{{"kind", "bilinear"}, {"layer", s.layer}, {"matrix", matrix}};
        }
        json operator()(const SentinelScore& s) const {
            return json{{"kind", "sentinel"}, {"admit", expr_to_j(s.admit)},
                        {"inner", std::visit(*this, s.inner->v)}};
        }
    };
    return std::visit(Enc{}, score.v);
}

ScoreSpec score_from_j(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "expr") return ExprScore{expr_from_j(j.at("expr"))};
    if (kind == "table") {
        TableScore s;
        s.key = expr_from_j(j.at("key"));
        for (const json& v : j.at("rows")) s.rows.push_back(value_from_j(v));
        for (const json& v : j.at("cols")) s.cols.push_back(value_from_j(v));
        for (const json& row : j.at("entries")) {
            std::vector<Rat> out;
            for (const json& r : row) out.push_back(rat_from_j(r));
            s.entries.push_back(std::move(out));
        }
        return s;
    }
    if (kind == "separable") {
        SeparableScore s;
        s.context_layers = j.at("context_layers").get<int>();
        for (const json& term : j.at("terms"))
            s.terms.push_back({expr_from_j(term.at("f")), expr_from_j(term.at("g"))});
        return s;
    }
    if (kind == "bilinear") {
        BilinearScore s;
        s.layer = j.at("layer").get<int>();
        for (const json& row : j.at("matrix")) {
            std::vector<Rat> out;
            for (const json& r : row) out.push_back(rat_from_j(r));
            s.matrix.push_back(std::move(out));
        }
        return s;
    }
    if (kind == "sentinel") {
        SentinelScore s;
        s.admit = expr_from_j(j.at("admit"));
        s.inner = std::make_shared<ScoreSpec>(score_from_j(j.at("inner")));
        return s;
    }
    fail(ErrorKind::SyntaxError, "unknown score kind '" + kind + "'");
}

json line_to_j(const Line& line) {
    if (const auto* pw = std::get_if<PointwiseLine>(&line))
        return json{{"kind", "pointwise"}, {"value", expr_to_j(pw->value)}};
    const auto& at = std::get<AttentionLine>(line);
    return json{{"kind", "attention"},
                {"mask", masking_name(at.mask)},
                {"tie", tiebreak_name(at.tie)},
                {"score", score_to_j(at.score)},
                {"value", expr_to_j(at.value)},
                {"default", expr_to_j(at.default_value)}};
}

Line line_from_j(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "pointwise") return PointwiseLine{expr_from_j(j.at("value"))};
    if (kind != "attention") fail(ErrorKind::SyntaxError, "unknown line kind '" + kind + "'");
    AttentionLine at;
    std::string mask = j.at("mask").get<std::string>();
    if (mask == "none") at.mask = Masking::NoMask;
    else if (mask == "future") at.mask = Masking::StrictFuture;
    else if (mask == "past") at.mask = Masking::StrictPast;
    else fail(ErrorKind::SyntaxError, "unknown masking '" + mask + "'");
    std::string tie = j.at("tie").get<std::string>();
    if (tie == "rightmost") at.tie = TieBreak::Rightmost;
    else if (tie == "leftmost") at.tie = TieBreak::Leftmost;
    else fail(ErrorKind::SyntaxError, "unknown tie break '" + tie + "'");
    at.score = score_from_j(j.at("score"));
    at.value = expr_from_j(j.at("value"));
    at.default_value = expr_from_j(j.at("default"));
    return at;
}

} // namespace

std::string program_to_json(const Recognizer& rec) {
    json j;
    json init{{"kind", initkind_name(rec.init.kind)},
              {"alphabet", std::string(rec.init.alphabet.begin(), rec.init.alphabet.end())}};
    if (rec.init.kind == InitKind::CustomExpr) init["custom"] = expr_to_j(rec.init.custom);
    j["init"] = init;
    json lines = json::array();
    for (const Line& line : rec.lines) lines.push_back(line_to_j(line));
    j["lines"] = lines;
    j["accept"] = expr_to_j(rec.accept);
    j["read"] = rec.read_pos == ReadPos::Last ? "last" : "first";
    j["empty_accepts"] = rec.empty_word_accepts;
    return j.dump(2) + "\n";
}

Recognizer program_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::SyntaxError, std::string("invalid JSON: ") + e.what());
    }
    Recognizer rec;
    try {
        const json& init = j.at("init");
        std::string kind = init.at("kind").get<std::string>();
        if (kind == "charonly") rec.init.kind = InitKind::CharOnly;
        else if (kind == "charposlen") rec.init.kind = InitKind::CharPosLen;
        else if (kind == "custom") rec.init.kind = InitKind::CustomExpr;
        else fail(ErrorKind::SyntaxError, "unknown init kind '" + kind + "'");
        for (char c : init.at("alphabet").get<std::string>()) rec.init.alphabet.push_back(c);
        if (rec.init.kind == InitKind::CustomExpr) rec.init.custom = expr_from_j(init.at("custom"));
        for (const json& line : j.at("lines")) rec.lines.push_back(line_from_j(line));
        rec.accept = expr_from_j(j.at("accept"));
        rec.read_pos = j.at("read").get<std::string>() == "first" ? ReadPos::First : ReadPos::Last;
        rec.empty_word_accepts = j.at("empty_accepts").get<bool>();
    } catch (const json::exception& e) {
        fail(ErrorKind::SyntaxError, std::string("malformed program JSON: ") + e.what());
    }
    validate_recognizer(rec);
    return rec;
}

std::string trace_to_json(const Recognizer& rec, const Word& word, const RunTrace& trace) {
    json j;
    j["word"] = word;
    j["verdict"] = trace.accepted ? "accept" : "reject";
    json layers = json::array();
    for (const Layer& layer : trace.layers) {
        json row = json::array();
        for (const Value& v : layer) row.push_back(v.to_string());
        layers.push_back(row);
    }
    j["layers"] = layers;
    json selected = json::array();
    for (size_t k = 0; k < trace.selected.size(); ++k) {
        const auto* at = std::get_if<AttentionLine>(&rec.lines[k]);
        if (!at) {
            selected.push_back(nullptr);
            continue;
        }
        json row = json::array();
        for (int idx : trace.selected[k]) row.push_back(idx);
        selected.push_back(row);
    }
    j["selected"] = selected;
    return j.dump(2) + "\n";
}

} // namespace uhatlab
