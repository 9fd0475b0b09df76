#pragma once

#include "sizedtypes/sizes.hpp"
#include "sizedtypes/syntax.hpp"

namespace st {

TermP erase(const TermP& t);
TermP turing_y();
TermP omega();

struct StepResult {
    TermP next;          // null when t is a normal form
    bool stuck = false;  // normal form containing a case that cannot fire
};
StepResult step(const TermP& t);

struct Whnf {
    enum class K { Head, Value, OutOfFuel } k;
    std::string con;
    std::vector<TermP> args;
    TermP term;
    std::size_t steps = 0;
};
Whnf whnf(const TermP& t, std::size_t fuel);

struct Approx;
using ApproxP = std::shared_ptr<const Approx>;
struct Approx {
    enum class K { Constr, Bottom, Opaque } k;
    std::string con;
    std::vector<ApproxP> kids;
    TermP term;
};
ApproxP a_bottom();
ApproxP a_constr(const std::string& c, std::vector<ApproxP> kids = {});
ApproxP a_opaque(const TermP& t);
std::size_t approx_nodes(const ApproxP& a);

struct EvalBudget {
    std::size_t fuel = 10000;
    std::size_t depth = 5;
};

// uniform depth cut at every constructor layer
ApproxP approximant(const TermP& t, const EvalBudget& b);

struct TypedApprox {
    ApproxP approx;
    std::size_t nodes = 0;
    std::size_t fuel_used = 0;
    bool fuel_limited = false;
};
// depth counts coinductive layers only; inductive parts are evaluated completely
TypedApprox approximant_typed(const Registry& reg, const TermP& t, const TypeP& tau, const EvalBudget& b,
                              std::size_t node_cap = 200000);

bool refines(const ApproxP& a1, const ApproxP& a2);

bool observable(const Registry& reg, const TypeP& tau);
struct NotObservable : std::runtime_error {
    using std::runtime_error::runtime_error;
};
bool member(const ApproxP& a, const TypeP& tau, const Registry& reg, const Valuation& v, bool strict);

struct ProductivityReport {
    std::vector<std::string> lines;
    bool pass = false;
    int fail_at = -1;
};
ProductivityReport productivity_check(const Registry& reg, const TermP& t, const TypeP& tau, std::size_t max_depth,
                                      std::size_t fuel = 10000);

std::string print(const ApproxP& a);

}  // namespace st
