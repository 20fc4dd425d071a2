#include "doctest.h"

#include <random>

#include <functional>

#include "uhatlab/circuit.hpp"

using namespace uhatlab;

namespace {

Circuit and_gate() {
    Circuit c;
    c.vertices[1] = {"x1", {}};
    c.vertices[2] = {"x2", {}};
    c.vertices[3] = {"AND", {1, 2}};
    c.outputs = {3};
    c.num_inputs = 2;
    return c;
}

} // namespace

TEST_SUITE("circuit evaluation") {
    TEST_CASE("binary and") {
        Circuit c = and_gate();
        CHECK(eval_circuit(c, {true, true}) == std::vector<bool>{true});
        CHECK(eval_circuit(c, {true, false}) == std::vector<bool>{false});
    }

    TEST_CASE("empty fan-in conventions") {
        Circuit c;
        c.vertices[1] = {"AND", {}};
        c.vertices[2] = {"OR", {}};
        c.outputs = {1, 2};
        c.num_inputs = 0;
        auto out = eval_circuit(c, {});
        CHECK(out == std::vector<bool>{true, false});
    }

    TEST_CASE("not gate") {
        Circuit c;
        c.vertices[1] = {"x1", {}};
        c.vertices[2] = {"NOT", {1}};
        c.outputs = {2};
        c.num_inputs = 1;
        CHECK(eval_circuit(c, {false}) == std::vector<bool>{true});
    }

    TEST_CASE("cycles and arity violations are rejected") {
        Circuit cyc;
        cyc.vertices[1] = {"NOT", {2}};
        cyc.vertices[2] = {"NOT", {1}};
        cyc.outputs = {1};
        cyc.num_inputs = 0;
        CHECK_THROWS_AS(validate_circuit(cyc), UhatError);

        Circuit bad;
        bad.vertices[1] = {"x1", {}};
        bad.vertices[2] = {"NOT", {1, 1}};
        bad.outputs = {2};
        bad.num_inputs = 1;
        CHECK_THROWS_AS(validate_circuit(bad), UhatError);

        Circuit dup;
        dup.vertices[1] = {"x1", {}};
        dup.vertices[2] = {"x1", {}};
        dup.outputs = {1};
        dup.num_inputs = 1;
        CHECK_THROWS_AS(validate_circuit(dup), UhatError);
    }

    TEST_CASE("monotonicity of not-free circuits") {
        // flipping one 0 to 1 never flips an output 1 -> 0
        std::mt19937 rng(5);
        Circuit c;
        for (int k = 1; k <= 4; ++k) c.vertices[k] = {"x" + std::to_string(k), {}};
        c.vertices[5] = {"AND", {1, 2}};
        c.vertices[6] = {"OR", {3, 5}};
        c.vertices[7] = {"AND", {6, 4}};
        c.vertices[8] = {"OR", {5, 7}};
        c.outputs = {8};
        c.num_inputs = 4;
        for (int bits = 0; bits < 16; ++bits) {
            std::vector<bool> in(4);
            for (int k = 0; k < 4; ++k) in[k] = (bits >> k) & 1;
            bool base = eval_circuit(c, in)[0];
            for (int k = 0; k < 4; ++k) {
                if (in[k]) continue;
                auto flipped = in;
                flipped[k] = true;
                if (base) REQUIRE(eval_circuit(c, flipped)[0]);
            }
        }
    }
}

TEST_SUITE("circuit metrics") {
    TEST_CASE("single gate over two inputs") {
        CircuitMetrics m = circuit_metrics(and_gate());
        CHECK(m.depth == 1);
        CHECK(m.wire_count == 2);
    }

    TEST_CASE("chain of two nots has depth 2") {
        Circuit c;
        c.vertices[1] = {"x1", {}};
        c.vertices[2] = {"NOT", {1}};
        c.vertices[3] = {"NOT", {2}};
        c.outputs = {3};
        c.num_inputs = 1;
        CHECK(circuit_metrics(c).depth == 2);
    }

    TEST_CASE("balanced or-of-ands over four inputs") {
        Circuit c;
        for (int k = 1; k <= 4; ++k) c.vertices[k] = {"x" + std::to_string(k), {}};
        c.vertices[5] = {"AND", {1, 2}};
        c.vertices[6] = {"AND", {3, 4}};
        c.vertices[7] = {"OR", {5, 6}};
        c.outputs = {7};
        c.num_inputs = 4;
        CircuitMetrics m = circuit_metrics(c);
        CHECK(m.depth == 2);
        CHECK(m.wire_count == 6);
    }

    TEST_CASE("depth equals brute-force longest path on a small dag") {
        Circuit c;
        c.vertices[1] = {"x1", {}};
        c.vertices[2] = {"NOT", {1}};
        c.vertices[3] = {"AND", {1, 2}};
        c.vertices[4] = {"OR", {2, 3}};
        c.vertices[5] = {"AND", {1, 4}};
        c.outputs = {5};
        c.num_inputs = 1;
        // brute force: enumerate all paths
        std::function<int(int)> longest = [&](int id) {
            int best = 0;
            for (int src : c.vertices.at(id).inputs) best = std::max(best, 1 + longest(src));
            return best;
        };
        int brute = 0;
        for (const auto& [id, v] : c.vertices) brute = std::max(brute, longest(id));
        CHECK(circuit_metrics(c).depth == brute);
    }
}

TEST_SUITE("netlist and encoding") {
    TEST_CASE("round trip through the netlist text") {
        std::string text = "1 x1\n2 x2\n3 AND 1 2\n4 NOT 3\noutputs 4\n";
        Circuit c = parse_circuit(text);
        CHECK(c.num_inputs == 2);
        CHECK(eval_circuit(c, {true, true}) == std::vector<bool>{false});
        Circuit again = parse_circuit(print_circuit(c));
        CHECK(print_circuit(again) == print_circuit(c));
    }

    TEST_CASE("comments and blank lines are ignored") {
        std::string text = "# majority of two\n\n1 x1\n2 x2\n3 OR 1 2\noutputs 3\n";
        Circuit c = parse_circuit(text);
        CHECK(eval_circuit(c, {false, true}) == std::vector<bool>{true});
    }

    TEST_CASE("binary letter encoding") {
        std::map<char, std::string> h{{'a', "0"}, {'b', "1"}};
        CHECK(encode_binary("ab", h) == "01");
        CHECK(encode_binary("", h) == "");
        std::map<char, std::string> three{{'(', "00"}, {')', "01"}, {'#', "10"}};
        CHECK(encode_binary("()", three).size() == 4);
        std::map<char, std::string> dup{{'a', "0"}, {'b', "0"}};
        CHECK_THROWS_AS(encode_binary("ab", dup), UhatError);
        std::map<char, std::string> wide{{'a', "00"}, {'b', "01"}};
        CHECK_THROWS_AS(encode_binary("ab", wide), UhatError);
    }
}
