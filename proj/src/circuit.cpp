#include "uhatlab/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

namespace uhatlab {

namespace {

bool is_input_label(const std::string& label, int* index = nullptr) {
    if (label.size() < 2 || label[0] != 'x') return false;
    for (size_t k = 1; k < label.size(); ++k)
        if (!isdigit(static_cast<unsigned char>(label[k]))) return false;
    if (index) *index = std::stoi(label.substr(1));
    return true;
}

// Vertex ids in topological order; throws CycleDetected.
std::vector<int> topological_order(const Circuit& c) {
    std::map<int, int> indegree;
    std::map<int, std::vector<int>> consumers;
    for (const auto& [id, v] : c.vertices) {
        indegree.try_emplace(id, 0);
        for (int src : v.inputs) {
            consumers[src].push_back(id);
            ++indegree[id];
        }
    }
    std::queue<int> ready;
    for (const auto& [id, deg] : indegree)
        if (deg == 0) ready.push(id);
    std::vector<int> order;
    while (!ready.empty()) {
        int id = ready.front();
        ready.pop();
        order.push_back(id);
        for (int next : consumers[id])
            if (--indegree[next] == 0) ready.push(next);
    }
    if (order.size() != c.vertices.size())
        fail(ErrorKind::CycleDetected, "circuit graph contains a cycle");
    return order;
}

} // namespace

void validate_circuit(const Circuit& c) {
    std::map<int, int> input_seen; // input index -> count
    for (const auto& [id, v] : c.vertices) {
        for (int src : v.inputs)
            if (!c.vertices.count(src))
                fail(ErrorKind::ArityViolation,
                     "vertex " + std::to_string(id) + " reads undefined vertex " +
                         std::to_string(src));
        int idx = 0;
        if (is_input_label(v.label, &idx)) {
            if (!v.inputs.empty())
                fail(ErrorKind::ArityViolation, "input " + v.label + " must have fan-in 0");
            ++input_seen[idx];
        } else if (v.label == "0" || v.label == "1") {
            if (!v.inputs.empty())
                fail(ErrorKind::ArityViolation, "constant must have fan-in 0");
        } else if (v.label == "NOT") {
            if (v.inputs.size() != 1)
                fail(ErrorKind::ArityViolation, "NOT must have fan-in 1");
        } else if (v.label != "AND" && v.label != "OR") {
            fail(ErrorKind::SyntaxError, "unknown vertex label '" + v.label + "'");
        }
    }
    for (int k = 1; k <= c.num_inputs; ++k) {
        auto it = input_seen.find(k);
        if (it == input_seen.end() || it->second != 1)
            fail(ErrorKind::ArityViolation,
                 "input x" + std::to_string(k) + " must occur exactly once");
    }
    if (int(input_seen.size()) != c.num_inputs)
        fail(ErrorKind::ArityViolation, "input labels exceed the declared input count");
    for (int out : c.outputs)
        if (!c.vertices.count(out))
            fail(ErrorKind::ArityViolation, "undefined output vertex " + std::to_string(out));
    topological_order(c);
}

std::vector<bool> eval_circuit(const Circuit& c, const std::vector<bool>& bits) {
    validate_circuit(c);
    if (int(bits.size()) != c.num_inputs)
        fail(ErrorKind::ArityViolation,
             "expected " + std::to_string(c.num_inputs) + " input bits, got " +
                 std::to_string(bits.size()));
    std::map<int, bool> value;
    for (int id : topological_order(c)) {
        const auto& v = c.vertices.at(id);
        int idx = 0;
        if (is_input_label(v.label, &idx)) {
            value[id] = bits[idx - 1];
        } else if (v.label == "0") {
            value[id] = false;
        } else if (v.label == "1") {
            value[id] = true;
        } else if (v.label == "NOT") {
            value[id] = !value.at(v.inputs[0]);
        } else if (v.label == "AND") {
            bool acc = true; // empty meet
            for (int src : v.inputs) acc = acc && value.at(src);
            value[id] = acc;
        } else { // OR
            bool acc = false; // empty join
            for (int src : v.inputs) acc = acc || value.at(src);
            value[id] = acc;
        }
    }
    std::vector<bool> out;
    out.reserve(c.outputs.size());
    for (int id : c.outputs) out.push_back(value.at(id));
    return out;
}

CircuitMetrics circuit_metrics(const Circuit& c) {
    CircuitMetrics metrics;
    std::map<int, int> depth;
    for (int id : topological_order(c)) {
        const auto& v = c.vertices.at(id);
        metrics.wire_count += v.inputs.size();
        int d = 0;
        for (int src : v.inputs) d = std::max(d, depth.at(src) + 1);
        depth[id] = d;
    }
    for (const auto& [id, d] : depth) metrics.depth = std::max(metrics.depth, d);
    return metrics;
}

Circuit parse_circuit(const std::string& text) {
    Circuit c;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    int max_input = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream tokens(line);
        std::string first;
        if (!(tokens >> first)) continue;
        if (first == "outputs") {
            int id;
            while (tokens >> id) c.outputs.push_back(id);
            continue;
        }
        int id;
        try {
            id = std::stoi(first);
        } catch (const std::exception&) {
            fail(ErrorKind::SyntaxError,
                 "line " + std::to_string(line_no) + ": expected a vertex id, got '" + first + "'");
        }
        Circuit::Vertex v;
        if (!(tokens >> v.label))
            fail(ErrorKind::SyntaxError, "line " + std::to_string(line_no) + ": missing label");
        int src;
        while (tokens >> src) v.inputs.push_back(src);
        if (c.vertices.count(id))
            fail(ErrorKind::SyntaxError,
                 "line " + std::to_string(line_no) + ": duplicate vertex id " + std::to_string(id));
        int idx = 0;
        if (is_input_label(v.label, &idx)) max_input = std::max(max_input, idx);
        c.vertices[id] = std::move(v);
    }
    c.num_inputs = max_input;
    validate_circuit(c);
    return c;
}

std::string print_circuit(const Circuit& c) {
    std::ostringstream out;
    for (const auto& [id, v] : c.vertices) {
        out << id << " " << v.label;
        for (int src : v.inputs) out << " " << src;
        out << "\n";
    }
    out << "outputs";
    for (int id : c.outputs) out << " " << id;
    out << "\n";
    return out.str();
}

std::string encode_binary(const std::string& word, const std::map<char, std::string>& h) {
    size_t width = h.empty() ? 0 : h.begin()->second.size();
    size_t expected = h.size() <= 1 ? 0 : size_t(std::ceil(std::log2(double(h.size()))));
    std::map<std::string, char> seen;
    for (const auto& [letter, code] : h) {
        if (code.size() != width)
            fail(ErrorKind::NonInjectiveEncoding, "letter codes must share one width");
        if (width != expected)
            fail(ErrorKind::NonInjectiveEncoding,
                 "code width must be ceil(log2(alphabet size))");
        for (char bit : code)
            if (bit != '0' && bit != '1')
                fail(ErrorKind::NonInjectiveEncoding, "codes must be binary strings");
        if (!seen.emplace(code, letter).second)
            fail(ErrorKind::NonInjectiveEncoding,
                 std::string("code reused for letter '") + letter + "'");
    }
    std::string out;
    out.reserve(word.size() * width);
    for (char c : word) {
        auto it = h.find(c);
        if (it == h.end())
            fail(ErrorKind::UnknownLetter, std::string("letter '") + c + "' has no code");
        out += it->second;
    }
    return out;
}

} // namespace uhatlab
