#pragma once

#include <map>
#include <string>
#include <vector>

#include "uhatlab/errors.hpp"

namespace uhatlab {

// Boolean circuit as a labeled DAG. Labels: x<k> (inputs, fan-in 0),
// 0 / 1 (constants), NOT (fan-in 1), AND / OR (arbitrary fan-in).
struct Circuit {
    struct Vertex {
        std::string label;
        std::vector<int> inputs; // wire sources
    };
    std::map<int, Vertex> vertices;
    std::vector<int> outputs;
    int num_inputs = 0;
};

// Structural validation: every x1..xn present exactly once with fan-in 0,
// arities respected, graph acyclic, all wire endpoints defined.
void validate_circuit(const Circuit& c);

// Topological evaluation; empty AND is 1, empty OR is 0.
std::vector<bool> eval_circuit(const Circuit& c, const std::vector<bool>& bits);

struct CircuitMetrics {
    int depth = 0;       // longest path, in wires
    size_t wire_count = 0;
};

CircuitMetrics circuit_metrics(const Circuit& c);

// Netlist format: one vertex per line ("<id> <label> <input ids...>"),
// '#' comments, and a final "outputs <ids...>" line.
Circuit parse_circuit(const std::string& text);
std::string print_circuit(const Circuit& c);

// Concatenated fixed-width letter codes; h must be injective with width
// ceil(log2(|h|)).
std::string encode_binary(const std::string& word, const std::map<char, std::string>& h);

} // namespace uhatlab
