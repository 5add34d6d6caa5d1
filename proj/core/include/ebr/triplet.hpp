#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ebr/presets.hpp"

namespace ebr {

enum class Verdict { Pass, Fail, Probable, Unknown };
std::string to_string(Verdict v);

struct ConditionResult {
    int index = 0;
    Verdict verdict = Verdict::Unknown;
    std::string evidence;
    std::vector<std::string> notes;
    nlohmann::json data = nlohmann::json::object();
    double seconds = 0;
    nlohmann::json to_json() const;
};

struct ConditionReport {
    Triplet triplet;
    bool nonsingular = false;
    std::vector<ConditionResult> conditions;  // indices 1..8 in order
    bool any_fail() const;
    nlohmann::json to_json() const;
};

struct CheckOptions {
    unsigned prime_bound = 100;
    unsigned depth_cap = Tower::kDefaultDepthCap;
    std::size_t hensel_budget = 200000;  // nodes per prime
};

// The product abc(5a+5b+c)(20a+5b+2c)(4a^2+b^2)(c^2-100ab)(c^2+5bc+10ac+25ab).
Integer nonsingularity_product(const Triplet& t);
bool check_nonsingular(const Triplet& t);

ConditionResult check_condition(const Triplet& t, int k, const CheckOptions& opt = {});
ConditionReport check_all(const Triplet& t, const CheckOptions& opt = {});

// Surface quadrics in (v0, v1, v2, w0, w1, w2).
std::array<Integer, 3> surface_values(const Triplet& t, const std::array<Integer, 6>& x);

// Local solvability of the surface at p: a smooth point mod p, or a point
// mod p^k passing the Hensel criterion.
struct LocalPoint {
    enum class Status { SmoothModP, HenselLift, NoPointsGoodPrime, Inconclusive };
    Status status = Status::Inconclusive;
    unsigned precision = 0;  // k of the point mod p^k
    std::array<Integer, 6> point{};
    std::string str() const;
};
LocalPoint local_point(const Triplet& t, std::uint64_t p, std::size_t hensel_budget = 200000);
bool is_good_prime(const Triplet& t, const Integer& p);

// Box of triplets "a0..a1,b0..b1,c0..c1", inclusive.
struct SearchBox {
    Integer a0, a1, b0, b1, c0, c1;
    static SearchBox parse(const std::string& text);  // throws std::invalid_argument
    Integer size() const;
};

struct SearchResult {
    std::vector<ConditionReport> hits;  // lexicographic triplet order
    std::uint64_t examined = 0;
    bool complete = true;
};

// Emits triplets passing every condition in `filters` (a report holds only
// the filtered conditions unless full_reports is set). `stop` may be raised
// from another thread; the result is then flagged incomplete.
SearchResult search(const SearchBox& box, const std::vector<int>& filters,
                    const CheckOptions& opt = {}, unsigned threads = 1,
                    const std::atomic<bool>* stop = nullptr, bool full_reports = false);

}  // namespace ebr
