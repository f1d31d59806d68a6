// Copyright 2026 The qsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <numbers>
#include <sstream>
#include <vector>

#include "qsynth/errors.hpp"
#include "qsynth/toolkit.hpp"

namespace qsynth {

namespace {

constexpr std::string_view kPhaseTag = "global_phase:";

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

[[noreturn]] void syntax(std::size_t line, const std::string &msg) {
    throw FormatError(FormatError::Kind::Syntax, "line " + std::to_string(line) + ": " + msg);
}

/// Recursive-descent evaluator for constant angle expressions.
class ExprParser {
public:
    ExprParser(std::string_view text, std::size_t line) : s_(text), line_(line) {}

    double parse() {
        const double v = expr();
        skip_ws();
        if (pos_ != s_.size()) {
            syntax(line_, "unexpected '" + std::string(s_.substr(pos_)) + "' in expression");
        }
        return v;
    }

private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    double expr() {
        double v = term();
        for (;;) {
            if (eat('+')) {
                v += term();
            } else if (eat('-')) {
                v -= term();
            } else {
                return v;
            }
        }
    }
    double term() {
        double v = unary();
        for (;;) {
            if (eat('*')) {
                v *= unary();
            } else if (eat('/')) {
                v /= unary();
            } else {
                return v;
            }
        }
    }
    double unary() {
        if (eat('-')) {
            return -unary();
        }
        if (eat('+')) {
            return unary();
        }
        return primary();
    }
    double primary() {
        skip_ws();
        if (eat('(')) {
            const double v = expr();
            if (!eat(')')) {
                syntax(line_, "missing ')' in expression");
            }
            return v;
        }
        if (s_.substr(pos_, 2) == "pi" &&
            (pos_ + 2 == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 2])))) {
            pos_ += 2;
            return std::numbers::pi;
        }
        const std::string rest(s_.substr(pos_));
        char *end = nullptr;
        const double v = std::strtod(rest.c_str(), &end);
        if (end == rest.c_str()) {
            syntax(line_, rest.empty() ? "empty expression" : "bad number '" + rest + "'");
        }
        pos_ += static_cast<std::size_t>(end - rest.c_str());
        return v;
    }

    std::string_view s_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split_top(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') {
            ++depth;
        } else if (s[i] == ')') {
            --depth;
        } else if (s[i] == sep && depth == 0) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    out.push_back(trim(s.substr(start)));
    return out;
}

struct Statement {
    std::string text;
    std::size_t line;
};

class Importer {
public:
    BoundCircuit run(std::string_view text) {
        split_statements(text);
        for (const auto &st : statements_) {
            handle(st);
        }
        if (!circuit_) {
            syntax(last_line_, "missing qreg declaration");
        }
        circuit_->set_global_phase(comment_phase_ + rz_phase_);
        return BoundCircuit{std::move(*circuit_), std::move(params_)};
    }

private:
    void split_statements(std::string_view text) {
        std::string current;
        std::size_t current_line = 0;
        std::size_t line = 1;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const std::size_t eol = std::min(text.find('\n', pos), text.size());
            std::string_view raw = text.substr(pos, eol - pos);
            if (const auto c = raw.find("//"); c != std::string_view::npos) {
                read_comment(trim(raw.substr(c + 2)), line);
                raw = raw.substr(0, c);
            }
            for (char ch : raw) {
                if (ch == ';') {
                    statements_.push_back({std::string(trim(current)), current_line});
                    current.clear();
                    current_line = 0;
                } else {
                    if (current_line == 0 && !std::isspace(static_cast<unsigned char>(ch))) {
                        current_line = line;
                    }
                    current.push_back(ch);
                }
            }
            current.push_back(' ');
            last_line_ = line;
            if (eol == text.size()) {
                break;
            }
            pos = eol + 1;
            ++line;
        }
        if (!trim(current).empty()) {
            syntax(current_line, "statement not terminated by ';'");
        }
    }

    void read_comment(std::string_view body, std::size_t line) {
        if (body.substr(0, kPhaseTag.size()) != kPhaseTag) {
            return;
        }
        comment_phase_ = ExprParser(trim(body.substr(kPhaseTag.size())), line).parse();
    }

    int qubit_ref(std::string_view arg, std::size_t line) const {
        const auto lb = arg.find('[');
        const auto rb = arg.find(']');
        if (lb == std::string_view::npos || rb == std::string_view::npos || rb < lb || rb + 1 != arg.size()) {
            syntax(line, "bad qubit reference '" + std::string(arg) + "'");
        }
        if (trim(arg.substr(0, lb)) != reg_name_) {
            syntax(line, "unknown register '" + std::string(arg.substr(0, lb)) + "'");
        }
        const std::string idx(trim(arg.substr(lb + 1, rb - lb - 1)));
        std::size_t used = 0;
        int q = -1;
        try {
            q = std::stoi(idx, &used);
        } catch (const std::exception &) {
            syntax(line, "bad qubit index '" + idx + "'");
        }
        if (used != idx.size() || q < 0 || q >= circuit_->n_qubits()) {
            syntax(line, "qubit index '" + idx + "' out of range");
        }
        return q;
    }

    void handle(const Statement &st) {
        std::string_view s = trim(st.text);
        if (s.empty()) {
            return;
        }
        std::size_t i = 0;
        while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) {
            ++i;
        }
        const std::string word(s.substr(0, i));
        std::string_view rest = trim(s.substr(i));
        if (word.empty()) {
            syntax(st.line, "expected a statement, got '" + std::string(s) + "'");
        }
        if (word == "OPENQASM") {
            if (rest != "2.0") {
                syntax(st.line, "unsupported OPENQASM version '" + std::string(rest) + "'");
            }
            return;
        }
        if (word == "include" || word == "creg" || word == "barrier") {
            return;
        }
        if (word == "qreg") {
            declare_qreg(rest, st.line);
            return;
        }
        if (!circuit_) {
            syntax(st.line, "gate before qreg declaration");
        }
        std::vector<double> args;
        if (!rest.empty() && rest.front() == '(') {
            const auto close = matching_paren(rest, st.line);
            for (auto e : split_top(rest.substr(1, close - 1), ',')) {
                args.push_back(ExprParser(e, st.line).parse());
            }
            rest = trim(rest.substr(close + 1));
        }
        std::vector<int> qubits;
        for (auto a : split_top(rest, ',')) {
            qubits.push_back(qubit_ref(a, st.line));
        }
        emit(word, args, qubits, st.line);
    }

    static std::size_t matching_paren(std::string_view s, std::size_t line) {
        int depth = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '(') {
                ++depth;
            } else if (s[i] == ')' && --depth == 0) {
                return i;
            }
        }
        syntax(line, "unbalanced parentheses");
    }

    void declare_qreg(std::string_view rest, std::size_t line) {
        if (circuit_) {
            syntax(line, "only one qreg is supported");
        }
        const auto lb = rest.find('[');
        const auto rb = rest.find(']');
        if (lb == std::string_view::npos || rb == std::string_view::npos || rb < lb) {
            syntax(line, "bad qreg declaration");
        }
        reg_name_ = std::string(trim(rest.substr(0, lb)));
        const std::string count(trim(rest.substr(lb + 1, rb - lb - 1)));
        int n = 0;
        try {
            n = std::stoi(count);
        } catch (const std::exception &) {
            syntax(line, "bad qreg size '" + count + "'");
        }
        if (n < 1 || n > 16) {
            syntax(line, "qreg size " + count + " out of range");
        }
        circuit_.emplace(n);
    }

    void expect(const std::string &name, const std::vector<double> &args, const std::vector<int> &q,
                std::size_t n_args, std::size_t n_qubits, std::size_t line) const {
        if (args.size() != n_args || q.size() != n_qubits) {
            syntax(line, name + " expects " + std::to_string(n_args) + " parameter(s) and " +
                             std::to_string(n_qubits) + " qubit(s)");
        }
        if (n_qubits == 2 && q[0] == q[1]) {
            syntax(line, name + " control and target coincide");
        }
    }

    void push(GateKind kind, int target, std::optional<int> control, std::initializer_list<double> values) {
        circuit_->add(kind, target, control);
        params_.insert(params_.end(), values);
    }

    void emit(const std::string &name, const std::vector<double> &a, const std::vector<int> &q, std::size_t line) {
        constexpr double pi = std::numbers::pi;
        if (name == "u3" || name == "u") {
            expect(name, a, q, 3, 1, line);
            push(GateKind::U3, q[0], std::nullopt, {a[0], a[1], a[2]});
        } else if (name == "cx" || name == "CX") {
            expect(name, a, q, 0, 2, line);
            push(GateKind::CX, q[1], q[0], {});
        } else if (name == "cz") {
            expect(name, a, q, 0, 2, line);
            push(GateKind::CZ, q[1], q[0], {});
        } else if (name == "h") {
            expect(name, a, q, 0, 1, line);
            push(GateKind::H, q[0], std::nullopt, {});
        } else if (name == "x") {
            expect(name, a, q, 0, 1, line);
            push(GateKind::U3, q[0], std::nullopt, {pi, 0.0, pi});
        } else if (name == "ry") {
            expect(name, a, q, 1, 1, line);
            push(GateKind::RY, q[0], std::nullopt, {a[0]});
        } else if (name == "rz") {
            expect(name, a, q, 1, 1, line);
            push(GateKind::Phase, q[0], std::nullopt, {a[0]});
            rz_phase_ -= a[0] / 2.0;
        } else if (name == "s") {
            expect(name, a, q, 0, 1, line);
            push(GateKind::Phase, q[0], std::nullopt, {pi / 2.0});
        } else if (name == "sdg") {
            expect(name, a, q, 0, 1, line);
            push(GateKind::Phase, q[0], std::nullopt, {-pi / 2.0});
        } else {
            throw FormatError(FormatError::Kind::UnsupportedGate,
                              "line " + std::to_string(line) + ": unsupported gate '" + name + "'");
        }
    }

    std::vector<Statement> statements_;
    std::optional<Circuit> circuit_;
    std::vector<double> params_;
    std::string reg_name_;
    double comment_phase_ = 0.0;
    double rz_phase_ = 0.0;
    std::size_t last_line_ = 1;
};

std::string slurp(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError(FormatError::Kind::Io, "cannot open " + path.string());
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

std::string export_qasm(const BoundCircuit &bound) {
    const Circuit &c = bound.circuit;
    if (bound.params.size() != c.param_count()) {
        throw DimensionMismatch("export_qasm: parameter vector does not match circuit");
    }
    std::ostringstream out;
    out << "OPENQASM 2.0;\n"
        << "include \"qelib1.inc\";\n"
        << "// global_phase: " << fmt17(c.global_phase()) << "\n"
        << "qreg q[" << c.n_qubits() << "];\n";
    for (const auto &g : c.gates()) {
        switch (g.kind) {
        case GateKind::U3:
            out << "u3(" << fmt17(bound.params[g.param_slots[0]]) << "," << fmt17(bound.params[g.param_slots[1]])
                << "," << fmt17(bound.params[g.param_slots[2]]) << ") q[" << g.target << "];\n";
            break;
        case GateKind::CX:
            out << "cx q[" << *g.control << "],q[" << g.target << "];\n";
            break;
        default:
            throw InvalidParameter("export_qasm: gate '" + std::string(gate_name(g.kind)) +
                                   "' is not in {u3, cx}; finalize the circuit first");
        }
    }
    return out.str();
}

void export_qasm(const BoundCircuit &bound, const std::filesystem::path &path) {
    const std::string text = export_qasm(bound);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw FormatError(FormatError::Kind::Io, "cannot open " + path.string() + " for writing");
    }
    out << text;
    if (!out) {
        throw FormatError(FormatError::Kind::Io, "write failed: " + path.string());
    }
}

BoundCircuit parse_qasm(std::string_view text) { return Importer{}.run(text); }

BoundCircuit import_qasm(const std::filesystem::path &path) { return parse_qasm(slurp(path)); }

} // namespace qsynth
