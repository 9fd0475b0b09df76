#pragma once

#include <tuple>

#include "sizedtypes/constraints.hpp"
#include "sizedtypes/syntax.hpp"

namespace st {

// Brings two forall types under a common binder name.
// The default renames the second binder to the first, or both to a fresh name on capture.
struct BinderOps {
    virtual ~BinderOps() = default;
    virtual std::tuple<std::string, TypeP, TypeP> align(const TypeP& a, const TypeP& b) const;
};

std::optional<Pairs> gen_sub_constraints(const Registry& reg, const TypeP& t1, const TypeP& t2,
                                         const BinderOps& ops = BinderOps{});
bool subtype(const Registry& reg, const TypeP& t1, const TypeP& t2, const DefMap& U = {});

std::optional<TypeP> join(const Registry& reg, const TypeP& a, const TypeP& b, const BinderOps& ops = BinderOps{});
std::optional<TypeP> meet(const Registry& reg, const TypeP& a, const TypeP& b, const BinderOps& ops = BinderOps{});

TypeP tgt(const TypeP& t);
TypeP chgtgt(const TypeP& t, const TypeP& alpha);

bool contains_bot(const TypeP& t);

}  // namespace st
