#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "vfive/errors.hpp"
#include "vfive/randomized.hpp"
#include "vfive/unit_vector.hpp"

namespace vfive {

/// One escalation round of the direct search: level L swept with per-block
/// tolerance tau (tau = eps, then 3*eps, then L+1 with tau reset).
struct SearchPlan {
    int L;
    double tau;
    int escalation_round;
    int max_L;
};

/// Open-addressing map from residue 5^L - b^2 - c^2 to the first (b, c) that
/// produced it (optionally all of them, in insertion order).
template <class Key, class Coord>
class ResidueTableT {
public:
    ResidueTableT(std::size_t expected, std::size_t cap, bool keep_all)
        : cap_(cap), keep_all_(keep_all) {
        std::size_t want = std::max<std::size_t>(2 * expected, 64);
        std::size_t pow2 = 64;
        while (pow2 < want) pow2 <<= 1;
        slots_.assign(pow2, Slot{kEmpty, 0, 0});
        mask_ = pow2 - 1;
    }

    void insert(Key key, Coord b, Coord c) {
        if (count_ >= cap_) {
            throw TableCapExceeded("residue table exceeds " + std::to_string(cap_) +
                                   " entries (see --max-table-entries / VFIVE_MAX_TABLE)");
        }
        if (keep_all_) {
            auto& v = all_[key];
            v.emplace_back(b, c);
            ++count_;
            return;
        }
        if (2 * (count_ + 1) > slots_.size()) grow();
        std::size_t i = probe_start(key);
        while (slots_[i].key != kEmpty) {
            if (slots_[i].key == key) return;  // first (b, c) wins
            i = (i + 1) & mask_;
        }
        slots_[i] = Slot{key, b, c};
        ++count_;
    }

    /// Calls fn(b, c) for each stored pair under key, in insertion order;
    /// stops early (returning true) when fn returns true.
    template <class Fn>
    bool for_each_match(Key key, Fn&& fn) const {
        if (keep_all_) {
            auto it = all_.find(key);
            if (it == all_.end()) return false;
            for (const auto& [b, c] : it->second) {
                if (fn(b, c)) return true;
            }
            return false;
        }
        std::size_t i = probe_start(key);
        while (slots_[i].key != kEmpty) {
            if (slots_[i].key == key) return fn(slots_[i].b, slots_[i].c);
            i = (i + 1) & mask_;
        }
        return false;
    }

    std::size_t size() const { return count_; }

private:
    struct Slot {
        Key key;
        Coord b, c;
    };

    struct KeyHash {
        std::size_t operator()(Key k) const { return mix(k); }
    };

    static constexpr Key kEmpty = ~(Key)0;

    static std::size_t mix(Key k) {
        auto x = (std::uint64_t)k ^ (std::uint64_t)((uint128)k >> 64);
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    std::size_t probe_start(Key k) const { return mix(k) & mask_; }

    void grow() {
        std::vector<Slot> old;
        old.swap(slots_);
        slots_.assign(old.size() * 2, Slot{kEmpty, 0, 0});
        mask_ = slots_.size() - 1;
        for (const Slot& s : old) {
            if (s.key == kEmpty) continue;
            std::size_t i = probe_start(s.key);
            while (slots_[i].key != kEmpty) i = (i + 1) & mask_;
            slots_[i] = s;
        }
    }

    std::vector<Slot> slots_;
    std::size_t mask_ = 0;
    std::size_t count_ = 0;
    std::size_t cap_;
    bool keep_all_;
    std::unordered_map<Key, std::vector<std::pair<Coord, Coord>>, KeyHash> all_;
};

using ResidueTable = ResidueTableT<std::uint64_t, std::int32_t>;

struct DirectOptions {
    std::size_t max_table_entries = 50'000'000;
    bool keep_all_collisions = false;
    bool use_filter = true;
    std::uint32_t filter_trial_bound = 1000;
    /// The sweep begins below the nominal starting level; typical targets
    /// resolve one or two levels under it, which is where the medians sit.
    int start_offset = -2;
    /// Exact hits (targets already on the level-l grid) short-circuit the
    /// sweep. Tests disable this to exercise pass completeness.
    bool enable_grid_snap = true;
};

/// Smallest integer L with 5^(-L/3) <= eps.
int starting_level(Precision eps);

/// The (L, tau) escalation schedule for eps, before any start offset.
std::vector<SearchPlan> escalation_schedule(Precision eps);

/// Meet-in-the-middle search for a W circuit within eps of g. Deterministic;
/// throws SearchExhausted past the level cap, TableCapExceeded on memory.
ApproxResult direct_search(const UnitVector4& g, Precision eps, const DirectOptions& opts = {});

}  // namespace vfive
