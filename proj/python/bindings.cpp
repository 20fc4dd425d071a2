#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "uhatlab/analysis.hpp"
#include "uhatlab/circuit.hpp"
#include "uhatlab/parser.hpp"
#include "uhatlab/programs.hpp"
#include "uhatlab/serialize.hpp"
#include "uhatlab/transforms.hpp"

namespace py = pybind11;
using namespace uhatlab;

namespace {

py::dict classification_dict(const Classification& c) {
    py::dict d;
    d["finite_type"] = c.finite_type;
    d["separable_scores"] = c.separable_scores;
    d["bilinear_scores"] = c.bilinear_scores;
    d["binary_scores"] = c.binary_scores;
    py::list maskings;
    for (Masking m : c.maskings_used) maskings.append(std::string(masking_name(m)));
    d["maskings_used"] = maskings;
    d["ties_checked_up_to"] = c.ties_checked_up_to;
    d["ties_possible"] = c.ties_possible;
    return d;
}

py::dict witness_dict(const FixabilityWitness& w) {
    py::dict d;
    d["epsilon"] = rat_to_string(w.epsilon);
    d["n"] = w.n;
    d["pattern"] = w.rho.pattern;
    d["budget"] = w.budget;
    switch (w.verdict) {
        case FixVerdict::FixedIn: d["verdict"] = "fixed_in"; break;
        case FixVerdict::FixedOut: d["verdict"] = "fixed_out"; break;
        case FixVerdict::Unfixable: d["verdict"] = "unfixable"; break;
    }
    if (w.extension) d["extension"] = w.extension->pattern;
    return d;
}

WordPredicate as_predicate(const py::object& language) {
    if (py::isinstance<Recognizer>(language)) {
        Recognizer rec = language.cast<Recognizer>();
        return [rec](const Word& w) { return recognize(rec, w); };
    }
    if (py::isinstance<py::str>(language)) {
        return builtin_oracle(language.cast<std::string>());
    }
    auto fn = language.cast<std::function<bool(std::string)>>();
    return [fn](const Word& w) { return fn(w); };
}

std::vector<char> as_alphabet(const std::string& letters) {
    return std::vector<char>(letters.begin(), letters.end());
}

Rat as_rat(const std::string& text) {
    auto r = rat_from_string(text);
    if (!r) fail(ErrorKind::SyntaxError, "bad rational '" + text + "'");
    return *r;
}

// Value wrappers: the formula handles are shared_ptr-to-const, which is
// not a pybind holder type.
struct PyLtl { Ltl f; };
struct PyFo { Fo f; };

} // namespace

PYBIND11_MODULE(_uhatlab, m) {
    m.doc() = "interpreter, transformation passes and verification harness for "
              "unique-hard-attention sequence programs";

    py::register_exception<UhatError>(m, "UhatError");

    py::class_<Recognizer>(m, "Recognizer")
        .def("recognize", [](const Recognizer& rec, const std::string& w) { return recognize(rec, w); },
             py::arg("word"))
        .def("run",
             [](const Recognizer& rec, const std::string& w) {
                 Layers layers = run_program(rec, w);
                 std::vector<std::vector<std::string>> out;
                 for (const Layer& layer : layers) {
                     std::vector<std::string> row;
                     for (const Value& v : layer) row.push_back(v.to_string());
                     out.push_back(std::move(row));
                 }
                 return out;
             },
             py::arg("word"), "layer-by-layer values as strings")
        .def("trace",
             [](const Recognizer& rec, const std::string& w) {
                 RunTrace trace = run_traced(rec, w);
                 py::dict d;
                 d["accepted"] = trace.accepted;
                 d["selected"] = trace.selected;
                 return d;
             },
             py::arg("word"))
        .def("classify",
             [](const Recognizer& rec, int ties_bound) {
                 return classification_dict(classify_program(rec, ties_bound));
             },
             py::arg("ties_bound") = 4)
        .def("to_dsl", &program_to_dsl)
        .def("to_json", &program_to_json)
        .def_property_readonly("alphabet",
                               [](const Recognizer& rec) {
                                   return std::string(rec.init.alphabet.begin(),
                                                      rec.init.alphabet.end());
                               })
        .def("__repr__", [](const Recognizer& rec) {
            return "<Recognizer lines=" + std::to_string(rec.lines.size()) + " alphabet=" +
                   std::string(rec.init.alphabet.begin(), rec.init.alphabet.end()) + ">";
        });

    m.def("parse_program", &parse_program, py::arg("text"), "parse the line-oriented DSL");
    m.def("program_from_json", &program_from_json, py::arg("text"));
    m.def("builtin", [](const std::string& name) { return builtin_recognizer(name).rec; },
          py::arg("name"));
    m.def("builtin_names", [] {
        std::vector<std::string> names;
        for (const auto& named : builtin_recognizers()) names.push_back(named.name);
        return names;
    });
    m.def("builtin_oracle",
          [](const std::string& name) {
              WordPredicate oracle = builtin_oracle(name);
              return std::function<bool(std::string)>(
                  [oracle](std::string w) { return oracle(w); });
          },
          py::arg("name"));

    m.def("pass_names", &pass_names);
    m.def("apply_pass", &apply_pass, py::arg("rec"), py::arg("name"), py::arg("bound") = 8);
    m.def("verify_pass",
          [](const Recognizer& before, const Recognizer& after, int max_len) {
              PassReport r = verify_pass(before, after, max_len);
              py::dict d;
              d["equivalent"] = !r.counterexample.has_value();
              d["checked_up_to"] = r.equivalence_checked_up_to;
              d["layer_delta"] = r.layer_delta;
              if (r.counterexample) d["counterexample"] = *r.counterexample;
              d["report"] = r.to_string();
              return d;
          },
          py::arg("before"), py::arg("after"), py::arg("max_len") = 6);

    m.def("check_equivalence",
          [](const py::object& a, const py::object& b, const std::string& alphabet, int max_len)
              -> std::optional<std::string> {
              return check_equivalence(as_predicate(a), as_predicate(b), as_alphabet(alphabet),
                                       max_len);
          },
          py::arg("a"), py::arg("b"), py::arg("alphabet"), py::arg("max_len") = 8,
          "first disagreeing word in shortlex order, or None");

    m.def("check_fixability",
          [](const py::object& language, const std::string& pattern, const std::string& alphabet,
             const std::string& epsilon) {
              Restriction rho{pattern, as_alphabet(alphabet)};
              return witness_dict(check_fixability(as_predicate(language), rho, as_rat(epsilon)));
          },
          py::arg("language"), py::arg("pattern"), py::arg("alphabet"), py::arg("epsilon"));

    m.def("search_unfixable",
          [](const py::object& language, const std::string& epsilon, int n_min, int n_max,
             const std::string& alphabet) -> py::object {
              auto witness = search_unfixable(as_predicate(language), as_rat(epsilon), n_min,
                                              n_max, as_alphabet(alphabet));
              if (!witness) return py::none();
              return witness_dict(*witness);
          },
          py::arg("language"), py::arg("epsilon"), py::arg("n_min"), py::arg("n_max"),
          py::arg("alphabet"));

    m.def("sbar", [](int i, int j, int n, int s) { return rat_to_string(sbar(i, j, n, s)); },
          py::arg("i"), py::arg("j"), py::arg("n"), py::arg("s"),
          "exact rational value of the mask-simulation score");
    m.def("audit_sbar",
          [](int bound) {
              SbarReport r = audit_sbar(bound);
              py::dict d;
              d["bound"] = r.bound;
              d["checked"] = r.checked;
              d["violations"] = r.violations;
              d["ok"] = r.ok();
              return d;
          },
          py::arg("bound") = 16);

    py::class_<PyLtl>(m, "LtlFormula")
        .def("__str__", [](const PyLtl& f) { return ltl_to_string(f.f); })
        .def("evaluate",
             [](const PyLtl& f, const std::string& w, int pos) {
                 return eval_ltl(f.f, w, pos, MonPredRegistry::standard());
             },
             py::arg("word"), py::arg("position") = 0)
        .def("recognize",
             [](const PyLtl& f, const std::string& w, const std::string& mode) {
                 LtlMode m = mode == "pltl" ? LtlMode::PltlAtLast : LtlMode::FltlAtFirst;
                 return ltl_recognize(f.f, w, m, MonPredRegistry::standard());
             },
             py::arg("word"), py::arg("mode") = "fltl");
    m.def("parse_ltl", [](const std::string& text) { return PyLtl{parse_ltl(text)}; },
          py::arg("text"));

    py::class_<PyFo>(m, "FoFormula")
        .def("__str__", [](const PyFo& f) { return fo_to_string(f.f); })
        .def("evaluate",
             [](const PyFo& f, const std::string& w) {
                 return eval_fo(f.f, w, MonPredRegistry::standard());
             },
             py::arg("word"));
    m.def("parse_fo", [](const std::string& text) { return PyFo{parse_fo(text)}; },
          py::arg("text"));

    py::class_<Circuit>(m, "Circuit")
        .def("evaluate",
             [](const Circuit& c, const std::string& bits) {
                 std::vector<bool> in;
                 for (char b : bits) in.push_back(b == '1');
                 auto out = eval_circuit(c, in);
                 std::string s;
                 for (bool bit : out) s += bit ? '1' : '0';
                 return s;
             },
             py::arg("bits"))
        .def("metrics",
             [](const Circuit& c) {
                 CircuitMetrics m = circuit_metrics(c);
                 return py::make_tuple(m.depth, m.wire_count);
             })
        .def("__str__", &print_circuit);
    m.def("parse_circuit", &parse_circuit, py::arg("text"));
    m.def("encode_binary", &encode_binary, py::arg("word"), py::arg("codes"));
}
