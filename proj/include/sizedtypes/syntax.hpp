#pragma once

#include <set>

#include "sizedtypes/ast.hpp"

namespace st {

struct Program {
    Registry reg;
    Context assumptions;
    std::vector<std::pair<std::string, TermP>> bindings;

    TermP binding(const std::string& name) const;
};

Registry parse_defs(const std::string& text);
Program parse_program(const std::string& text);

// tyvars lists names to read as type variables rather than definitions
SizeP parse_size(const std::string& text);
TypeP parse_type(const std::string& text, const Registry& reg, const std::set<std::string>& tyvars = {});
TermP parse_term(const std::string& text, const Program& prog);
TermP parse_term(const std::string& text, const Registry& reg);

std::string print(const SizeP& s);
std::string print(const TypeP& t);
std::string print(const TermP& t);
std::string print_def(const Def& d);

struct Diagnostic {
    std::string where;
    std::string message;
};

std::vector<Diagnostic> validate_registry(const Registry& reg);
bool strictly_positive(const TypeP& t, const Registry& reg);
bool closed_type(const TypeP& t);

SizeP subst_size(const SizeP& s, const SizeP& by, const std::string& i);
SizeP subst_size(const SizeP& s, const std::map<std::string, SizeP>& m);
TypeP subst_type(const TypeP& t, const TypeP& by, const std::string& a);
TypeP subst_type(const TypeP& t, const std::map<std::string, TypeP>& m);
TypeP subst_type_size(const TypeP& t, const SizeP& by, const std::string& i);
TypeP subst_type_size(const TypeP& t, const std::map<std::string, SizeP>& m);

struct VarSets {
    std::set<std::string> sv, fsv, tv;
};
VarSets free_vars(const SizeP& s);
VarSets free_vars(const TypeP& t);
std::set<std::string> fsv(const TypeP& t);
std::set<std::string> fsv(const Context& g);

// α-equivalence up to renaming of size binders and term binders
bool alpha_eq(const TypeP& a, const TypeP& b);
bool alpha_eq(const TermP& a, const TermP& b);

std::set<std::string> term_free_vars(const TermP& t);
TermP subst_term(const TermP& t, const TermP& by, const std::string& x);
TermP subst_terms(const TermP& t, const std::map<std::string, TermP>& m);

// first name of the form base, base1, base2, ... not in used; the result is added to used
std::string fresh_name(const std::string& base, std::set<std::string>& used);

}  // namespace st
