#pragma once

#include "sizedtypes/subtyping.hpp"

namespace st {

struct InferenceTriple {
    DefMap U;
    Pairs S;
    TypeP type;
    bool failed = false;
    std::vector<std::string> trail;  // innermost failure first

    std::size_t nodes() const;
};

InferenceTriple infer(const Registry& reg, const DefMap& U0, const Context& G, const TermP& t);

struct Decomposition {
    bool has_a = false;
    SizeP size;                 // size read off at A, when has_a
    std::vector<TypeP> alpha;   // parameters of the A instances
    std::vector<TypeP> beta;    // instances of the parameter variables
    TypeP sigma_prime;
};

std::optional<Decomposition> decompose_constructor_arg(const Registry& reg, const TypeP& theta, const TypeP& sigma,
                                                       const std::string& d, const BinderOps& ops = BinderOps{});

struct MinimalResult {
    TypeP type;               // null when untypable
    std::string reason;
};

MinimalResult minimal_type_ex(const Registry& reg, const Context& G, const TermP& t);
std::optional<TypeP> minimal_type(const Registry& reg, const Context& G, const TermP& t);
bool check(const Registry& reg, const Context& G, const TermP& t, const TypeP& tau);

// expands U inside a type without touching forall-bound variables
TypeP expand_type(const DefMap& U, const TypeP& t);

}  // namespace st
