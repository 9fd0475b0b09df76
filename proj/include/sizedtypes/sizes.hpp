#pragma once

#include <limits>

#include "sizedtypes/ast.hpp"

namespace st {

// values in N extended with infinity; arithmetic saturates
using Ext = std::uint64_t;
inline constexpr Ext INF = std::numeric_limits<Ext>::max();

struct Valuation {
    std::map<std::string, Ext> vals;
    Ext dflt = 0;

    Ext get(const std::string& i) const;
    void set(const std::string& i, Ext v) { vals[i] = v; }
};

std::string ext_str(Ext v);

Ext eval_size(const Valuation& v, const SizeP& s);

// definition map U: i = U(i)
using DefMap = std::map<std::string, SizeP>;

SizeP simplify_infty(const SizeP& s);
SizeP normalize_succ(const SizeP& s);

// min/max with the infinity rules, max(0,x)=x, min(0,x)=0 and idempotence
SizeP mk_min(const SizeP& a, const SizeP& b);
SizeP mk_max(const SizeP& a, const SizeP& b);

struct SizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

SizeP overline(const SizeP& s);  // throws SizeError unless s >= 1
SizeP underline(const SizeP& s);

bool size_leq(const SizeP& s1, const SizeP& s2);
bool size_ge_const(const DefMap& U, const SizeP& s, unsigned k);

}  // namespace st
