#include "sizedtypes/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace st {

namespace {

const std::set<std::string> kKeywords = {"inductive", "coinductive", "case", "of", "fix", "cofix", "forall",
                                         "min", "max", "oo", "assume", "let", "assert"};

struct Tok {
    enum K { Ident, Num, Sym, End } k;
    std::string text;
    Span at;
};

std::vector<Tok> lex(const std::string& src) {
    std::vector<Tok> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto adv = [&](std::size_t n) {
        while (n--) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    static const std::vector<std::string> syms = {"->", "=>", "/\\", "<=", "\\", "(", ")", "{", "}", "[", "]",
                                                  ",", ";", ":", ".", "^", "+", "="};
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            adv(1);
            continue;
        }
        if ((c == '-' && i + 1 < src.size() && src[i + 1] == '-') || (c == '/' && i + 1 < src.size() && src[i + 1] == '/') ||
            c == '#') {
            while (i < src.size() && src[i] != '\n') adv(1);
            continue;
        }
        Span at{line, col};
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\''))
                ++j;
            out.push_back({Tok::Ident, src.substr(i, j - i), at});
            adv(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            out.push_back({Tok::Num, src.substr(i, j - i), at});
            adv(j - i);
            continue;
        }
        bool ok = false;
        for (auto& s : syms) {
            if (src.compare(i, s.size(), s) == 0) {
                out.push_back({Tok::Sym, s, at});
                adv(s.size());
                ok = true;
                break;
            }
        }
        if (!ok) throw SyntaxError(std::string("unexpected character '") + c + "'", at);
    }
    out.push_back({Tok::End, "", {line, col}});
    return out;
}

class Parser {
public:
    Parser(const std::string& src, const Registry* reg, const Program* prog)
        : reg_(reg), prog_(prog), toks_(lex(src)) {}

    std::set<std::string> tyvars;

    bool at_end() const { return peek().k == Tok::End; }
    const Tok& peek(std::size_t o = 0) const { return toks_[std::min(pos_ + o, toks_.size() - 1)]; }
    bool is(const std::string& s, std::size_t o = 0) const {
        auto& t = peek(o);
        return (t.k == Tok::Sym || t.k == Tok::Ident) && t.text == s;
    }
    [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, peek().at); }
    void expect(const std::string& s) {
        if (!is(s)) fail("expected '" + s + "' but found '" + peek().text + "'");
        ++pos_;
    }
    bool accept(const std::string& s) {
        if (!is(s)) return false;
        ++pos_;
        return true;
    }
    std::string ident() {
        auto& t = peek();
        if (t.k != Tok::Ident || kKeywords.count(t.text)) fail("expected identifier but found '" + t.text + "'");
        ++pos_;
        return t.text;
    }
    unsigned number() {
        auto& t = peek();
        if (t.k != Tok::Num) fail("expected number");
        ++pos_;
        return static_cast<unsigned>(std::stoul(t.text));
    }

    // sizes
    SizeP size() {
        SizeP s = size_prim();
        while (is("+")) {
            ++pos_;
            s = s_plus(s, number());
        }
        return s;
    }
    SizeP size_prim() {
        auto& t = peek();
        if (t.k == Tok::Num) return s_const(number());
        if (accept("oo")) return s_inf();
        if (is("min") || is("max")) {
            bool mn = is("min");
            ++pos_;
            expect("(");
            SizeP s = size();
            expect(",");
            s = mn ? s_min(s, size()) : s_max(s, size());
            while (accept(",")) s = mn ? s_min(s, size()) : s_max(s, size());
            expect(")");
            return s;
        }
        if (accept("(")) {
            SizeP s = size();
            expect(")");
            return s;
        }
        return s_var(ident());
    }
    SizeP size_atom() {
        auto& t = peek();
        if (t.k == Tok::Num) return s_const(number());
        if (accept("oo")) return s_inf();
        if (is("min") || is("max") || is("(")) return size_prim();
        return s_var(ident());
    }

    // types
    const Def* cur_def = nullptr;

    TypeP type() {
        if (accept("forall")) {
            std::vector<std::string> vs{ident()};
            while (!is(".")) vs.push_back(ident());
            expect(".");
            TypeP body = type();
            for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = t_forall(*it, body);
            return body;
        }
        TypeP a = type_atom();
        if (accept("->")) return t_arrow(a, type());
        return a;
    }
    TypeP type_atom() {
        if (accept("(")) {
            TypeP t = type();
            expect(")");
            return t;
        }
        Span at = peek().at;
        std::string n = ident();
        if (cur_def) {
            auto& ps = cur_def->params;
            if (std::find(ps.begin(), ps.end(), n) != ps.end()) return t_var(n);
            if (n == cur_def->name) {
                if (is("^")) throw SyntaxError("recursive occurrence of " + n + " cannot carry a size", at);
                std::vector<TypeP> args = type_args();
                if (args.size() != ps.size()) throw SyntaxError("recursive occurrence of " + n + " must repeat its parameters", at);
                for (std::size_t j = 0; j < ps.size(); ++j)
                    if (args[j]->k != Type::K::Var || args[j]->name != ps[j])
                        throw SyntaxError("non-uniform recursive occurrence of " + n, at);
                return t_var(kRecVar);
            }
        } else if (tyvars.count(n)) {
            return t_var(n);
        }
        SizeP s = s_inf();
        if (accept("^")) s = size_atom();
        std::vector<TypeP> args = type_args();
        if (!cur_def && reg_) {
            const Def* d = reg_->find(n);
            if (!d) throw SyntaxError("unknown type " + n, at);
            if (d->params.size() != args.size())
                throw SyntaxError("type " + n + " expects " + std::to_string(d->params.size()) + " parameter(s)", at);
        }
        return t_data(n, s, std::move(args));
    }
    std::vector<TypeP> type_args() {
        std::vector<TypeP> args;
        if (accept("(")) {
            args.push_back(type());
            while (accept(",")) args.push_back(type());
            expect(")");
        }
        return args;
    }

    // definitions
    bool at_def() const { return is("inductive") || is("coinductive"); }
    Def definition() {
        Def d;
        d.span = peek().at;
        d.coind = is("coinductive");
        ++pos_;
        d.name = ident();
        if (accept("(")) {
            d.params.push_back(ident());
            while (accept(",")) d.params.push_back(ident());
            expect(")");
        }
        expect("{");
        cur_def = &d;
        while (!is("}")) {
            Ctor c;
            c.span = peek().at;
            c.name = ident();
            if (accept(":")) {
                TypeP t = type();
                while (t->k == Type::K::Arrow) {
                    c.args.push_back(t->args[0]);
                    t = t->args[1];
                }
                if (t->k != Type::K::Var || t->name != kRecVar)
                    throw SyntaxError("constructor " + c.name + " must return " + d.name, c.span);
            }
            d.ctors.push_back(std::move(c));
            if (!accept(";")) break;
        }
        cur_def = nullptr;
        expect("}");
        if (d.ctors.empty()) throw SyntaxError("definition " + d.name + " has no constructors", d.span);
        return d;
    }

    // terms
    std::vector<std::string> scope;

    bool starts_binder() const { return is("\\") || is("/\\") || is("fix") || is("cofix"); }
    bool starts_atom() const {
        auto& t = peek();
        if (t.k == Tok::Ident) return !kKeywords.count(t.text) || t.text == "case";
        return is("(");
    }

    TermP term() {
        if (accept("\\")) {
            std::string x = ident();
            TypeP ty;
            if (accept(":")) ty = type();
            expect(".");
            scope.push_back(x);
            TermP b = term();
            scope.pop_back();
            return m_lam(x, ty, b);
        }
        if (accept("/\\")) {
            std::string i = ident();
            expect(".");
            return m_slam(i, term());
        }
        if (is("fix") || is("cofix")) {
            bool co = is("cofix");
            ++pos_;
            std::string sv;
            if (accept("[")) {
                sv = ident();
                expect("]");
            } else if (co) {
                fail("cofix requires a size variable: cofix[j]");
            }
            std::string f = ident();
            expect(":");
            TypeP ty = type();
            expect(".");
            scope.push_back(f);
            TermP b = term();
            scope.pop_back();
            return co ? m_cofix(sv, f, ty, b) : m_fix(f, sv, ty, b);
        }
        TermP t = atom();
        for (;;) {
            if (accept("[")) {
                t = m_sapp(t, size());
                expect("]");
            } else if (starts_atom()) {
                t = m_app(t, atom());
            } else if (starts_binder()) {
                t = m_app(t, term());
            } else {
                break;
            }
        }
        return t;
    }
    TermP atom() {
        if (accept("(")) {
            TermP t = term();
            expect(")");
            return t;
        }
        if (accept("case")) {
            TermP s = term();
            expect("of");
            expect("{");
            std::vector<Branch> alts;
            while (!is("}")) {
                Branch b;
                b.con = ident();
                while (!is("=>")) b.vars.push_back(ident());
                expect("=>");
                for (auto& v : b.vars) scope.push_back(v);
                b.body = term();
                scope.resize(scope.size() - b.vars.size());
                alts.push_back(std::move(b));
                if (!accept(";")) break;
            }
            expect("}");
            return m_case(s, std::move(alts));
        }
        std::string n = ident();
        if (std::find(scope.begin(), scope.end(), n) != scope.end()) return m_var(n);
        if (reg_ && reg_->ctor(n)) return m_con(n);
        if (prog_) {
            if (TermP b = prog_->binding(n)) return b;
        }
        return m_var(n);
    }

    const Registry* reg_;
    const Program* prog_;

private:
    std::vector<Tok> toks_;
    std::size_t pos_ = 0;
};

std::string print_size_atom(const SizeP& s);

std::string print_size_impl(const SizeP& s) {
    unsigned k = 0;
    SizeP b = s;
    while (b->k == Size::K::Succ) {
        ++k;
        b = b->a;
    }
    std::string base;
    switch (b->k) {
        case Size::K::Zero: return std::to_string(k);
        case Size::K::Inf: base = "oo"; break;
        case Size::K::Var: base = b->name; break;
        case Size::K::Min: base = "min(" + print_size_impl(b->a) + "," + print_size_impl(b->b) + ")"; break;
        case Size::K::Max: base = "max(" + print_size_impl(b->a) + "," + print_size_impl(b->b) + ")"; break;
        default: break;
    }
    return k ? base + "+" + std::to_string(k) : base;
}

std::string print_size_atom(const SizeP& s) {
    std::string r = print_size_impl(s);
    if (s->k == Size::K::Succ && r.find('+') != std::string::npos) return "(" + r + ")";
    return r;
}

std::string print_type_impl(const TypeP& t, const Def* d);

std::string print_type_atom(const TypeP& t, const Def* d) {
    if (t->k == Type::K::Arrow || t->k == Type::K::Forall) return "(" + print_type_impl(t, d) + ")";
    return print_type_impl(t, d);
}

std::string print_type_impl(const TypeP& t, const Def* d) {
    switch (t->k) {
        case Type::K::Var:
            if (t->name == kRecVar && d) {
                std::string r = d->name;
                if (!d->params.empty()) {
                    r += "(";
                    for (std::size_t j = 0; j < d->params.size(); ++j) r += (j ? "," : "") + d->params[j];
                    r += ")";
                }
                return r;
            }
            return t->name == kRecVar ? "A" : t->name;
        case Type::K::Bot: return "_|_";
        case Type::K::Data: {
            std::string r = t->name;
            if (t->size->k != Size::K::Inf) r += "^" + print_size_atom(t->size);
            if (!t->args.empty()) {
                r += "(";
                for (std::size_t j = 0; j < t->args.size(); ++j) r += (j ? "," : "") + print_type_impl(t->args[j], d);
                r += ")";
            }
            return r;
        }
        case Type::K::Arrow: return print_type_atom(t->args[0], d) + " -> " + print_type_impl(t->args[1], d);
        case Type::K::Forall: return "forall " + t->name + ". " + print_type_impl(t->args[0], d);
    }
    return "?";
}

std::string print_term_impl(const TermP& t);

std::string print_term_atom(const TermP& t) {
    if (t->k == Term::K::Var || t->k == Term::K::Con) return t->name;
    return "(" + print_term_impl(t) + ")";
}

std::string print_term_fun(const TermP& t) {
    if (t->k == Term::K::App || t->k == Term::K::SApp) return print_term_impl(t);
    return print_term_atom(t);
}

std::string print_term_impl(const TermP& t) {
    switch (t->k) {
        case Term::K::Var:
        case Term::K::Con: return t->name;
        case Term::K::Lam:
            if (t->ty) return "\\" + t->name + " : " + print(t->ty) + ". " + print_term_impl(t->kids[0]);
            return "\\" + t->name + ". " + print_term_impl(t->kids[0]);
        case Term::K::App: return print_term_fun(t->kids[0]) + " " + print_term_atom(t->kids[1]);
        case Term::K::SApp: return print_term_fun(t->kids[0]) + " [" + print(t->size) + "]";
        case Term::K::SLam: return "/\\" + t->svar + ". " + print_term_impl(t->kids[0]);
        case Term::K::Case: {
            std::string r = "case " + print_term_impl(t->kids[0]) + " of { ";
            for (std::size_t k = 0; k < t->alts.size(); ++k) {
                auto& b = t->alts[k];
                if (k) r += "; ";
                r += b.con;
                for (auto& v : b.vars) r += " " + v;
                r += " => " + print_term_impl(b.body);
            }
            return r + " }";
        }
        case Term::K::Fix:
            return std::string("fix") + (t->svar.empty() ? "" : "[" + t->svar + "]") + " " + t->name + " : " + print(t->ty) +
                   " . " + print_term_impl(t->kids[0]);
        case Term::K::Cofix:
            return "cofix[" + t->svar + "] " + t->name + " : " + print(t->ty) + " . " + print_term_impl(t->kids[0]);
    }
    return "?";
}

void collect_size_vars(const SizeP& s, std::set<std::string>& out) {
    if (!s) return;
    if (s->k == Size::K::Var) out.insert(s->name);
    collect_size_vars(s->a, out);
    collect_size_vars(s->b, out);
}

void collect_type_vars(const TypeP& t, std::set<std::string> bound, VarSets& vs) {
    switch (t->k) {
        case Type::K::Var: vs.tv.insert(t->name); return;
        case Type::K::Bot: return;
        case Type::K::Data: {
            std::set<std::string> sv;
            collect_size_vars(t->size, sv);
            for (auto& v : sv) {
                vs.sv.insert(v);
                if (!bound.count(v)) vs.fsv.insert(v);
            }
            break;
        }
        case Type::K::Forall:
            vs.sv.insert(t->name);
            bound.insert(t->name);
            break;
        default: break;
    }
    for (auto& a : t->args) collect_type_vars(a, bound, vs);
}

}  // namespace

TermP Program::binding(const std::string& name) const {
    for (auto it = bindings.rbegin(); it != bindings.rend(); ++it)
        if (it->first == name) return it->second;
    return nullptr;
}

Registry parse_defs(const std::string& text) {
    Parser p(text, nullptr, nullptr);
    Registry reg;
    while (!p.at_end()) {
        if (!p.at_def()) p.fail("expected 'inductive' or 'coinductive'");
        reg.add(p.definition());
    }
    return reg;
}

Program parse_program(const std::string& text) {
    Program prog;
    Parser p(text, nullptr, nullptr);
    while (p.at_def()) prog.reg.add(p.definition());
    p.reg_ = &prog.reg;
    p.prog_ = &prog;
    while (!p.at_end()) {
        if (p.at_def()) p.fail("definitions must precede bindings");
        if (p.accept("assume")) {
            std::string x = p.ident();
            p.expect(":");
            TypeP t = p.type();
            p.expect(";");
            prog.assumptions.push_back({x, t});
            continue;
        }
        std::string name = p.ident();
        p.expect("=");
        for (auto& a : prog.assumptions) p.scope.push_back(a.first);
        TermP t = p.term();
        p.scope.clear();
        p.expect(";");
        prog.bindings.push_back({name, t});
    }
    return prog;
}

SizeP parse_size(const std::string& text) {
    Parser p(text, nullptr, nullptr);
    SizeP s = p.size();
    if (!p.at_end()) p.fail("trailing input after size expression");
    return s;
}

TypeP parse_type(const std::string& text, const Registry& reg, const std::set<std::string>& tyvars) {
    Parser p(text, &reg, nullptr);
    p.tyvars = tyvars;
    TypeP t = p.type();
    if (!p.at_end()) p.fail("trailing input after type");
    return t;
}

TermP parse_term(const std::string& text, const Program& prog) {
    Parser p(text, &prog.reg, &prog);
    for (auto& a : prog.assumptions) p.scope.push_back(a.first);
    TermP t = p.term();
    if (!p.at_end()) p.fail("trailing input after term");
    return t;
}

TermP parse_term(const std::string& text, const Registry& reg) {
    Parser p(text, &reg, nullptr);
    TermP t = p.term();
    if (!p.at_end()) p.fail("trailing input after term");
    return t;
}

std::string print(const SizeP& s) { return print_size_impl(s); }
std::string print(const TypeP& t) { return print_type_impl(t, nullptr); }
std::string print(const TermP& t) { return print_term_impl(t); }

std::string print_def(const Def& d) {
    std::string r = (d.coind ? "coinductive " : "inductive ") + d.name;
    if (!d.params.empty()) {
        r += "(";
        for (std::size_t j = 0; j < d.params.size(); ++j) r += (j ? "," : "") + d.params[j];
        r += ")";
    }
    r += " { ";
    for (std::size_t k = 0; k < d.ctors.size(); ++k) {
        auto& c = d.ctors[k];
        if (k) r += "; ";
        r += c.name + " : ";
        for (auto& a : c.args) r += print_type_atom(a, &d) + " -> ";
        r += print_type_impl(t_var(kRecVar), &d);
    }
    return r + " }";
}

bool closed_type(const TypeP& t) { return free_vars(t).tv.empty(); }

bool strictly_positive(const TypeP& t, const Registry& reg) {
    if (closed_type(t)) return true;
    switch (t->k) {
        case Type::K::Var: return true;
        case Type::K::Arrow: return closed_type(t->args[0]) && strictly_positive(t->args[1], reg);
        case Type::K::Forall: return strictly_positive(t->args[0], reg);
        case Type::K::Data:
            if (t->size->k != Size::K::Inf) return false;
            for (auto& a : t->args)
                if (!strictly_positive(a, reg)) return false;
            return true;
        default: return false;
    }
}

std::vector<Diagnostic> validate_registry(const Registry& reg) {
    std::vector<Diagnostic> out;
    std::map<std::string, std::set<std::string>> deps;
    for (auto& d : reg.defs) {
        std::set<std::string> allowed(d.params.begin(), d.params.end());
        allowed.insert(kRecVar);
        std::set<std::string> used_params;
        auto& dd = deps[d.name];
        for (auto& c : d.ctors) {
            std::string where = d.name + "." + c.name;
            for (auto& a : c.args) {
                std::function<void(const TypeP&)> refs = [&](const TypeP& t) {
                    if (t->k == Type::K::Data) {
                        const Def* e = reg.find(t->name);
                        if (!e) {
                            out.push_back({where, "unknown type " + t->name});
                        } else {
                            if (e->params.size() != t->args.size())
                                out.push_back({where, "type " + t->name + " applied to wrong number of parameters"});
                            dd.insert(t->name);
                        }
                    }
                    for (auto& x : t->args) refs(x);
                };
                refs(a);
                VarSets vs = free_vars(a);
                for (auto& v : vs.tv) {
                    if (!allowed.count(v)) out.push_back({where, "type variable " + v + " is not a parameter"});
                    used_params.insert(v);
                }
                if (!vs.fsv.empty()) out.push_back({where, "argument type " + print(a) + " has free size variables"});
                if (!strictly_positive(a, reg))
                    out.push_back({where, "argument type " + print_type_impl(a, &d) + " is not strictly positive"});
            }
        }
        for (auto& b : d.params)
            if (!used_params.count(b)) out.push_back({d.name, "parameter " + b + " occurs in no constructor"});
    }
    // the dependency order must be well-founded
    std::map<std::string, int> color;
    std::vector<std::string> path;
    std::set<std::string> reported;
    std::function<void(const std::string&)> dfs = [&](const std::string& d) {
        color[d] = 1;
        path.push_back(d);
        for (auto& e : deps[d]) {
            if (e == d) continue;
            if (color[e] == 1) {
                auto it = std::find(path.begin(), path.end(), e);
                std::string cyc;
                for (auto p = it; p != path.end(); ++p) cyc += *p + " -> ";
                cyc += e;
                if (!reported.count(e)) out.push_back({e, "cyclic dependency " + cyc});
                for (auto p = it; p != path.end(); ++p) reported.insert(*p);
            } else if (color[e] == 0) {
                dfs(e);
            }
        }
        path.pop_back();
        color[d] = 2;
    };
    for (auto& d : reg.defs)
        if (color[d.name] == 0) dfs(d.name);
    return out;
}

SizeP subst_size(const SizeP& s, const std::map<std::string, SizeP>& m) {
    switch (s->k) {
        case Size::K::Zero:
        case Size::K::Inf: return s;
        case Size::K::Var: {
            auto it = m.find(s->name);
            return it == m.end() ? s : it->second;
        }
        case Size::K::Succ: {
            SizeP a = subst_size(s->a, m);
            return a == s->a ? s : s_succ(a);
        }
        default: {
            SizeP a = subst_size(s->a, m), b = subst_size(s->b, m);
            if (a == s->a && b == s->b) return s;
            return s->k == Size::K::Min ? s_min(a, b) : s_max(a, b);
        }
    }
}

SizeP subst_size(const SizeP& s, const SizeP& by, const std::string& i) { return subst_size(s, {{i, by}}); }

std::string fresh_name(const std::string& base, std::set<std::string>& used) {
    std::string b = base;
    while (!b.empty() && std::isdigit(static_cast<unsigned char>(b.back()))) b.pop_back();
    if (b.empty()) b = "i";
    if (!used.count(base)) {
        used.insert(base);
        return base;
    }
    for (unsigned n = 1;; ++n) {
        std::string c = b + std::to_string(n);
        if (!used.count(c)) {
            used.insert(c);
            return c;
        }
    }
}

TypeP subst_type_size(const TypeP& t, const std::map<std::string, SizeP>& m) {
    if (m.empty()) return t;
    switch (t->k) {
        case Type::K::Var:
        case Type::K::Bot: return t;
        case Type::K::Data: {
            SizeP s = subst_size(t->size, m);
            std::vector<TypeP> args;
            bool same = s == t->size;
            for (auto& a : t->args) {
                args.push_back(subst_type_size(a, m));
                same = same && args.back() == a;
            }
            return same ? t : t_data(t->name, s, std::move(args));
        }
        case Type::K::Arrow: {
            TypeP a = subst_type_size(t->args[0], m), b = subst_type_size(t->args[1], m);
            return (a == t->args[0] && b == t->args[1]) ? t : t_arrow(a, b);
        }
        case Type::K::Forall: {
            std::map<std::string, SizeP> m2 = m;
            m2.erase(t->name);
            if (m2.empty()) return t;
            std::set<std::string> avoid;
            bool capture = false;
            for (auto& [k, v] : m2) {
                std::set<std::string> sv;
                collect_size_vars(v, sv);
                if (sv.count(t->name)) capture = true;
                avoid.insert(sv.begin(), sv.end());
                avoid.insert(k);
            }
            std::string i = t->name;
            TypeP body = t->args[0];
            if (capture) {
                VarSets bv = free_vars(body);
                avoid.insert(bv.sv.begin(), bv.sv.end());
                i = fresh_name(t->name + "'", avoid);
                m2[t->name] = s_var(i);
            }
            TypeP nb = subst_type_size(body, m2);
            return (nb == body && i == t->name) ? t : t_forall(i, nb);
        }
    }
    return t;
}

TypeP subst_type_size(const TypeP& t, const SizeP& by, const std::string& i) { return subst_type_size(t, {{i, by}}); }

TypeP subst_type(const TypeP& t, const std::map<std::string, TypeP>& m) {
    if (m.empty()) return t;
    switch (t->k) {
        case Type::K::Var: {
            auto it = m.find(t->name);
            return it == m.end() ? t : it->second;
        }
        case Type::K::Bot: return t;
        case Type::K::Forall: {
            bool capture = false;
            std::set<std::string> avoid;
            for (auto& [k, v] : m) {
                VarSets vs = free_vars(v);
                if (vs.fsv.count(t->name)) capture = true;
                avoid.insert(vs.sv.begin(), vs.sv.end());
            }
            if (capture) {
                VarSets bv = free_vars(t->args[0]);
                avoid.insert(bv.sv.begin(), bv.sv.end());
                std::string i = fresh_name(t->name + "'", avoid);
                return t_forall(i, subst_type(subst_type_size(t->args[0], s_var(i), t->name), m));
            }
            TypeP b = subst_type(t->args[0], m);
            return b == t->args[0] ? t : t_forall(t->name, b);
        }
        default: {
            std::vector<TypeP> args;
            bool same = true;
            for (auto& a : t->args) {
                args.push_back(subst_type(a, m));
                same = same && args.back() == a;
            }
            if (same) return t;
            if (t->k == Type::K::Arrow) return t_arrow(args[0], args[1]);
            return t_data(t->name, t->size, std::move(args));
        }
    }
}

TypeP subst_type(const TypeP& t, const TypeP& by, const std::string& a) { return subst_type(t, {{a, by}}); }

VarSets free_vars(const SizeP& s) {
    VarSets vs;
    collect_size_vars(s, vs.sv);
    vs.fsv = vs.sv;
    return vs;
}

VarSets free_vars(const TypeP& t) {
    VarSets vs;
    collect_type_vars(t, {}, vs);
    return vs;
}

std::set<std::string> fsv(const TypeP& t) { return free_vars(t).fsv; }

std::set<std::string> fsv(const Context& g) {
    std::set<std::string> r;
    for (auto& [x, t] : g) {
        auto f = fsv(t);
        r.insert(f.begin(), f.end());
    }
    return r;
}

namespace {

using Env = std::vector<std::pair<std::string, std::string>>;

bool same_var(const std::string& a, const std::string& b, const Env& env) {
    for (auto it = env.rbegin(); it != env.rend(); ++it) {
        if (it->first == a || it->second == b) return it->first == a && it->second == b;
    }
    return a == b;
}

bool alpha_size(const SizeP& a, const SizeP& b, const Env& env) {
    if (a->k != b->k) return false;
    switch (a->k) {
        case Size::K::Zero:
        case Size::K::Inf: return true;
        case Size::K::Var: return same_var(a->name, b->name, env);
        case Size::K::Succ: return alpha_size(a->a, b->a, env);
        default: return alpha_size(a->a, b->a, env) && alpha_size(a->b, b->b, env);
    }
}

bool alpha_type(const TypeP& a, const TypeP& b, Env& env) {
    if (!a || !b) return a == b;
    if (a->k != b->k || a->args.size() != b->args.size()) return false;
    switch (a->k) {
        case Type::K::Var: return a->name == b->name;
        case Type::K::Bot: return true;
        case Type::K::Data:
            if (a->name != b->name || !alpha_size(a->size, b->size, env)) return false;
            break;
        case Type::K::Forall: {
            env.push_back({a->name, b->name});
            bool r = alpha_type(a->args[0], b->args[0], env);
            env.pop_back();
            return r;
        }
        default: break;
    }
    for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!alpha_type(a->args[i], b->args[i], env)) return false;
    return true;
}

bool alpha_term(const TermP& a, const TermP& b, Env& tenv, Env& senv) {
    if (a->k != b->k || a->kids.size() != b->kids.size() || a->alts.size() != b->alts.size()) return false;
    switch (a->k) {
        case Term::K::Var: return same_var(a->name, b->name, tenv);
        case Term::K::Con: return a->name == b->name;
        case Term::K::Lam: {
            if ((a->ty == nullptr) != (b->ty == nullptr)) return false;
            if (a->ty && !alpha_type(a->ty, b->ty, senv)) return false;
            tenv.push_back({a->name, b->name});
            bool r = alpha_term(a->kids[0], b->kids[0], tenv, senv);
            tenv.pop_back();
            return r;
        }
        case Term::K::App: return alpha_term(a->kids[0], b->kids[0], tenv, senv) && alpha_term(a->kids[1], b->kids[1], tenv, senv);
        case Term::K::SApp: return alpha_size(a->size, b->size, senv) && alpha_term(a->kids[0], b->kids[0], tenv, senv);
        case Term::K::SLam: {
            senv.push_back({a->svar, b->svar});
            bool r = alpha_term(a->kids[0], b->kids[0], tenv, senv);
            senv.pop_back();
            return r;
        }
        case Term::K::Case: {
            if (!alpha_term(a->kids[0], b->kids[0], tenv, senv)) return false;
            for (std::size_t k = 0; k < a->alts.size(); ++k) {
                auto &x = a->alts[k], &y = b->alts[k];
                if (x.con != y.con || x.vars.size() != y.vars.size()) return false;
                for (std::size_t v = 0; v < x.vars.size(); ++v) tenv.push_back({x.vars[v], y.vars[v]});
                bool r = alpha_term(x.body, y.body, tenv, senv);
                tenv.resize(tenv.size() - x.vars.size());
                if (!r) return false;
            }
            return true;
        }
        case Term::K::Fix:
        case Term::K::Cofix: {
            if (!alpha_type(a->ty, b->ty, senv)) return false;
            if (a->svar.empty() != b->svar.empty()) return false;
            if (!a->svar.empty()) senv.push_back({a->svar, b->svar});
            tenv.push_back({a->name, b->name});
            bool r = alpha_term(a->kids[0], b->kids[0], tenv, senv);
            tenv.pop_back();
            if (!a->svar.empty()) senv.pop_back();
            return r;
        }
    }
    return false;
}

void term_fv(const TermP& t, std::vector<std::string>& bound, std::set<std::string>& out) {
    switch (t->k) {
        case Term::K::Var:
            if (std::find(bound.begin(), bound.end(), t->name) == bound.end()) out.insert(t->name);
            return;
        case Term::K::Con: return;
        case Term::K::Lam:
        case Term::K::Fix:
        case Term::K::Cofix:
            bound.push_back(t->name);
            term_fv(t->kids[0], bound, out);
            bound.pop_back();
            return;
        case Term::K::Case:
            term_fv(t->kids[0], bound, out);
            for (auto& b : t->alts) {
                for (auto& v : b.vars) bound.push_back(v);
                term_fv(b.body, bound, out);
                bound.resize(bound.size() - b.vars.size());
            }
            return;
        default:
            for (auto& k : t->kids) term_fv(k, bound, out);
    }
}

TermP subst_terms_impl(const TermP& t, const std::map<std::string, TermP>& m, const std::set<std::string>& mfv);

TermP rebind(const TermP& t, const std::map<std::string, TermP>& m, const std::set<std::string>& mfv,
             const std::vector<std::string>& binders, const TermP& body, std::vector<std::string>& newb) {
    std::map<std::string, TermP> m2 = m;
    for (auto& b : binders) m2.erase(b);
    newb = binders;
    if (m2.empty()) return body;
    std::set<std::string> avoid;
    bool clash = false;
    for (auto& b : binders)
        if (mfv.count(b)) clash = true;
    if (!clash) return subst_terms_impl(body, m2, mfv);
    avoid = mfv;
    std::set<std::string> bfv = term_free_vars(body);
    avoid.insert(bfv.begin(), bfv.end());
    for (auto& [k, v] : m2) avoid.insert(k);
    for (auto& b : newb) {
        if (mfv.count(b)) {
            std::string nb = fresh_name(b + "'", avoid);
            m2[b] = m_var(nb);
            b = nb;
        }
    }
    (void)t;
    std::set<std::string> mfv2 = mfv;
    for (auto& b : newb) mfv2.insert(b);
    return subst_terms_impl(body, m2, mfv2);
}

TermP subst_terms_impl(const TermP& t, const std::map<std::string, TermP>& m, const std::set<std::string>& mfv) {
    switch (t->k) {
        case Term::K::Var: {
            auto it = m.find(t->name);
            return it == m.end() ? t : it->second;
        }
        case Term::K::Con: return t;
        case Term::K::Lam:
        case Term::K::Fix:
        case Term::K::Cofix: {
            std::vector<std::string> nb;
            TermP b = rebind(t, m, mfv, {t->name}, t->kids[0], nb);
            if (b == t->kids[0] && nb[0] == t->name) return t;
            Term c = *t;
            c.name = nb[0];
            c.kids = {b};
            return std::make_shared<const Term>(std::move(c));
        }
        case Term::K::Case: {
            Term c = *t;
            c.kids = {subst_terms_impl(t->kids[0], m, mfv)};
            bool same = c.kids[0] == t->kids[0];
            for (auto& b : c.alts) {
                std::vector<std::string> nb;
                TermP body = rebind(t, m, mfv, b.vars, b.body, nb);
                same = same && body == b.body && nb == b.vars;
                b.vars = nb;
                b.body = body;
            }
            return same ? t : std::make_shared<const Term>(std::move(c));
        }
        default: {
            Term c = *t;
            bool same = true;
            for (auto& k : c.kids) {
                TermP n = subst_terms_impl(k, m, mfv);
                same = same && n == k;
                k = n;
            }
            return same ? t : std::make_shared<const Term>(std::move(c));
        }
    }
}

}  // namespace

bool alpha_eq(const TypeP& a, const TypeP& b) {
    Env env;
    return alpha_type(a, b, env);
}

bool alpha_eq(const TermP& a, const TermP& b) {
    Env te, se;
    return alpha_term(a, b, te, se);
}

std::set<std::string> term_free_vars(const TermP& t) {
    std::vector<std::string> bound;
    std::set<std::string> out;
    term_fv(t, bound, out);
    return out;
}

TermP subst_terms(const TermP& t, const std::map<std::string, TermP>& m) {
    if (m.empty()) return t;
    std::set<std::string> mfv;
    for (auto& [k, v] : m) {
        auto f = term_free_vars(v);
        mfv.insert(f.begin(), f.end());
    }
    return subst_terms_impl(t, m, mfv);
}

TermP subst_term(const TermP& t, const TermP& by, const std::string& x) { return subst_terms(t, {{x, by}}); }

}  // namespace st
