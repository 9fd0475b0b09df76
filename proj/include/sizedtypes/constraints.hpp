#pragma once

#include <set>

#include "sizedtypes/sizes.hpp"

namespace st {

using SizePair = std::pair<SizeP, SizeP>;  // lhs <= rhs
using Pairs = std::vector<SizePair>;

struct SizeConstraint {
    DefMap U;
    Pairs S;
};

struct ConstraintError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool check_acyclic(const DefMap& U);
SizeP expand(const DefMap& U, const SizeP& s);
// variables of S and U not defined by U
std::set<std::string> free_size_vars(const SizeConstraint& c);

struct Verdict {
    bool valid = true;
    Valuation witness;  // total on the free variables and dom(U) when invalid
};

Verdict is_valid(const SizeConstraint& c);  // throws ConstraintError if U is cyclic

// x + c <= y; the name kZeroNode stands for the constant 0
inline const std::string kZeroNode = "#0";
struct DiffAtom {
    std::string x;
    long long c;
    std::string y;
};
DiffAtom atom_le_const(const std::string& x, long long k);  // x <= k
DiffAtom atom_ge_const(const std::string& x, long long k);  // x >= k
std::optional<std::map<std::string, long long>> sat_atoms(const std::vector<DiffAtom>& atoms);

bool brute_force_valid(const SizeConstraint& c, unsigned bound);

struct Lit {
    std::string var;
    bool neg = false;
};
using Clause = std::vector<Lit>;
using Cnf = std::vector<Clause>;

// returns (s1, s2); the formula is unsatisfiable iff s2+1 <= s1 is valid
SizePair encode_3cnf(const Cnf& phi);
Cnf parse_dimacs(const std::string& text);

SizeConstraint parse_constraints(const std::string& text);
std::string print_constraints(const SizeConstraint& c);

}  // namespace st
