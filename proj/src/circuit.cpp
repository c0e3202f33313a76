#include "vfive/circuit.hpp"

#include <cctype>
#include <cmath>

#include "vfive/errors.hpp"

namespace vfive {

Circuit::Circuit(std::vector<GateToken> tokens) : tokens_(std::move(tokens)) {
    for (GateToken t : tokens_)
        if (is_v_gate(t)) ++v_count_;
}

void Circuit::append(GateToken t) {
    tokens_.push_back(t);
    if (is_v_gate(t)) ++v_count_;
}

void Circuit::append(const Circuit& other) {
    tokens_.insert(tokens_.end(), other.tokens_.begin(), other.tokens_.end());
    v_count_ += other.v_count_;
}

UnitVector4 Circuit::evaluate() const {
    QuatD acc{1, 0, 0, 0};
    int steps = 0;
    for (GateToken t : tokens_) {
        acc = qmul(acc, token_value(t));
        if (++steps % 32 == 0) {
            const double n = std::sqrt(acc.a * acc.a + acc.b * acc.b + acc.c * acc.c +
                                       acc.d * acc.d);
            acc = {acc.a / n, acc.b / n, acc.c / n, acc.d / n};
        }
    }
    return UnitVector4::from_quat(acc);
}

std::string Circuit::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
        if (i) out.push_back(' ');
        out.append(token_name(tokens_[i]));
    }
    return out;
}

Circuit Circuit::parse(std::string_view text) {
    std::vector<GateToken> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isspace((unsigned char)text[i])) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        while (i < text.size() && !std::isspace((unsigned char)text[i])) ++i;
        const std::string_view lexeme = text.substr(start, i - start);
        auto tok = token_from_name(lexeme);
        if (!tok) throw ParseError(start, std::string(lexeme));
        tokens.push_back(*tok);
    }
    return Circuit(std::move(tokens));
}

}  // namespace vfive
