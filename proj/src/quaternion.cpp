#include "vfive/quaternion.hpp"

#include <cctype>
#include <sstream>

namespace vfive {

LipschitzQuaternion multiply(const LipschitzQuaternion& p, const LipschitzQuaternion& q) {
    return {
        p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d,
        p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
        p.a * q.c - p.b * q.d + p.c * q.a + p.d * q.b,
        p.a * q.d + p.b * q.c - p.c * q.b + p.d * q.a,
    };
}

LipschitzQuaternion conjugate(const LipschitzQuaternion& q) { return {q.a, -q.b, -q.c, -q.d}; }

bigint norm(const LipschitzQuaternion& q) {
    return q.a * q.a + q.b * q.b + q.c * q.c + q.d * q.d;
}

std::optional<LipschitzQuaternion> try_right_divide(const LipschitzQuaternion& q,
                                                    const LipschitzQuaternion& d) {
    const bigint n = norm(d);
    if (n == 0) return std::nullopt;
    const LipschitzQuaternion p = multiply(q, conjugate(d));
    if (p.a % n != 0 || p.b % n != 0 || p.c % n != 0 || p.d % n != 0) return std::nullopt;
    return LipschitzQuaternion{p.a / n, p.b / n, p.c / n, p.d / n};
}

const std::array<LipschitzQuaternion, 14>& generator_set() {
    static const std::array<LipschitzQuaternion, 14> gens = {{
        {1, 0, 0, 0},
        {-1, 0, 0, 0},
        {0, 1, 0, 0},
        {0, -1, 0, 0},
        {0, 0, 1, 0},
        {0, 0, -1, 0},
        {0, 0, 0, 1},
        {0, 0, 0, -1},
        {1, 2, 0, 0},
        {1, -2, 0, 0},
        {1, 0, 2, 0},
        {1, 0, -2, 0},
        {1, 0, 0, 2},
        {1, 0, 0, -2},
    }};
    return gens;
}

const std::array<LipschitzQuaternion, 6>& norm5_generators() {
    static const std::array<LipschitzQuaternion, 6> gens = {{
        {1, 2, 0, 0},
        {1, -2, 0, 0},
        {1, 0, 2, 0},
        {1, 0, -2, 0},
        {1, 0, 0, 2},
        {1, 0, 0, -2},
    }};
    return gens;
}

bool is_unit(const LipschitzQuaternion& q) { return norm(q) == 1; }

std::string to_string(const LipschitzQuaternion& q) {
    std::ostringstream os;
    os << q.a << ',' << q.b << ',' << q.c << ',' << q.d;
    return os.str();
}

std::optional<LipschitzQuaternion> parse_quaternion(std::string_view text) {
    std::array<bigint, 4> parts;
    std::size_t pos = 0;
    for (int i = 0; i < 4; ++i) {
        std::size_t end = (i < 3) ? text.find(',', pos) : text.size();
        if (end == std::string_view::npos) return std::nullopt;
        std::string piece(text.substr(pos, end - pos));
        // trim surrounding whitespace
        while (!piece.empty() && std::isspace((unsigned char)piece.front())) piece.erase(0, 1);
        while (!piece.empty() && std::isspace((unsigned char)piece.back())) piece.pop_back();
        if (piece.empty()) return std::nullopt;
        if (piece[0] == '+') piece.erase(0, 1);  // cpp_int rejects a leading '+'
        std::size_t k = (!piece.empty() && piece[0] == '-') ? 1 : 0;
        if (k == piece.size() || piece.empty()) return std::nullopt;
        for (; k < piece.size(); ++k)
            if (!std::isdigit((unsigned char)piece[k])) return std::nullopt;
        parts[i] = bigint(piece);
        pos = end + 1;
    }
    return LipschitzQuaternion{parts[0], parts[1], parts[2], parts[3]};
}

UnitVector4 to_unit_vector(const LipschitzQuaternion& q) {
    return UnitVector4::normalized(q.a.convert_to<double>(), q.b.convert_to<double>(),
                                   q.c.convert_to<double>(), q.d.convert_to<double>());
}

}  // namespace vfive
