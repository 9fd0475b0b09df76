#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace st {

// size expressions: 0 | oo | i | s+1 | min(s,s) | max(s,s)
struct Size;
using SizeP = std::shared_ptr<const Size>;

struct Size {
    enum class K { Zero, Inf, Var, Succ, Min, Max };
    K k;
    std::string name;
    SizeP a, b;
};

SizeP s_zero();
SizeP s_inf();
SizeP s_var(const std::string& n);
SizeP s_succ(SizeP a);
SizeP s_plus(SizeP a, unsigned n);
SizeP s_const(unsigned n);
SizeP s_min(SizeP a, SizeP b);
SizeP s_max(SizeP a, SizeP b);
bool size_eq(const SizeP& a, const SizeP& b);
std::size_t size_nodes(const SizeP& s);

// types: A | d^s(T..) | T -> T | forall i. T, plus an internal bottom
struct Type;
using TypeP = std::shared_ptr<const Type>;

struct Type {
    enum class K { Var, Data, Arrow, Forall, Bot };
    K k;
    std::string name;  // type variable, definition name, or bound size variable
    SizeP size;        // Data only
    std::vector<TypeP> args;  // Data params; Arrow {dom, cod}; Forall {body}
};

TypeP t_var(const std::string& n);
TypeP t_data(const std::string& d, SizeP s, std::vector<TypeP> params = {});
TypeP t_arrow(TypeP a, TypeP b);
TypeP t_forall(const std::string& i, TypeP body);
TypeP t_bot();
bool type_eq(const TypeP& a, const TypeP& b);
std::size_t type_nodes(const TypeP& t);

// name of the recursive type variable inside constructor signatures
inline const std::string kRecVar = "$A";

struct Term;
using TermP = std::shared_ptr<const Term>;

struct Branch {
    std::string con;
    std::vector<std::string> vars;
    TermP body;
};

// decorated terms; a plain term uses only Var, Con, untyped Lam, App, Case
struct Term {
    enum class K { Var, Con, Lam, App, SApp, SLam, Case, Fix, Cofix };
    K k;
    std::string name;   // variable, constructor, lambda binder, fix/cofix function name
    std::string svar;   // size binder of SLam, cofix[j], optional fix[i]
    TypeP ty;           // Lam annotation (null when plain), Fix/Cofix annotation
    SizeP size;         // SApp argument
    std::vector<TermP> kids;
    std::vector<Branch> alts;
};

TermP m_var(const std::string& x);
TermP m_con(const std::string& c);
TermP m_lam(const std::string& x, TypeP ty, TermP body);
TermP m_app(TermP f, TermP a);
TermP m_apps(TermP f, const std::vector<TermP>& as);
TermP m_sapp(TermP t, SizeP s);
TermP m_slam(const std::string& i, TermP t);
TermP m_case(TermP scrut, std::vector<Branch> alts);
TermP m_fix(const std::string& f, const std::string& i, TypeP ty, TermP body);
TermP m_cofix(const std::string& j, const std::string& f, TypeP ty, TermP body);
std::size_t term_nodes(const TermP& t);

struct Span {
    int line = 0, col = 0;
};

struct SyntaxError : std::runtime_error {
    Span at;
    SyntaxError(const std::string& msg, Span s)
        : std::runtime_error(std::to_string(s.line) + ":" + std::to_string(s.col) + ": " + msg), at(s) {}
};

struct Ctor {
    std::string name;
    std::vector<TypeP> args;  // over kRecVar and the parameter names
    Span span;
};

struct Def {
    std::string name;
    bool coind = false;
    std::vector<std::string> params;
    std::vector<Ctor> ctors;
    Span span;
};

struct Registry {
    std::vector<Def> defs;
    std::map<std::string, std::size_t> by_name;
    std::map<std::string, std::pair<std::size_t, std::size_t>> ctor_of;

    const Def* find(const std::string& d) const;
    const Def* def_of_ctor(const std::string& c) const;
    const Ctor* ctor(const std::string& c) const;
    bool is_coind(const std::string& d) const;
    void add(Def d);  // throws SyntaxError on duplicates
};

using Context = std::vector<std::pair<std::string, TypeP>>;
const TypeP* ctx_lookup(const Context& g, const std::string& x);

}  // namespace st
