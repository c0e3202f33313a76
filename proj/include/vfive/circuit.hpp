#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "vfive/gates.hpp"
#include "vfive/unit_vector.hpp"

namespace vfive {

/// Gate-token sequence with a cached V count. The leftmost token is the
/// leftmost matrix factor (applied last to a state); evaluation multiplies
/// left to right.
class Circuit {
public:
    Circuit() = default;
    explicit Circuit(std::vector<GateToken> tokens);

    const std::vector<GateToken>& tokens() const { return tokens_; }
    int v_count() const { return v_count_; }
    std::size_t size() const { return tokens_.size(); }
    bool empty() const { return tokens_.empty(); }

    void append(GateToken t);
    void append(const Circuit& other);

    /// Canonicalized PSU(2) value of the left-to-right product.
    UnitVector4 evaluate() const;

    /// Tokens joined by single spaces; round-trips with parse.
    std::string to_string() const;

    /// Whitespace-separated tokens; throws ParseError on an unknown token.
    static Circuit parse(std::string_view text);

    bool operator==(const Circuit& o) const { return tokens_ == o.tokens_; }

private:
    std::vector<GateToken> tokens_;
    int v_count_ = 0;
};

inline Circuit operator+(Circuit lhs, const Circuit& rhs) {
    lhs.append(rhs);
    return lhs;
}

}  // namespace vfive
