#include "lot/logic/formula.hpp"

#include "lot/error.hpp"
#include "text_util.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace lot::logic {

NodeRef make_atom(std::size_t relation, std::vector<Term> args) {
    return std::make_shared<const FormulaNode>(FormulaNode{Op::atom, relation, std::move(args), nullptr, nullptr, {}});
}

NodeRef make_equal(Term lhs, Term rhs) {
    return std::make_shared<const FormulaNode>(FormulaNode{Op::equal, 0, {lhs, rhs}, nullptr, nullptr, {}});
}

NodeRef make_not(NodeRef operand) {
    return std::make_shared<const FormulaNode>(FormulaNode{Op::negation, 0, {}, std::move(operand), nullptr, {}});
}

NodeRef make_binary(Op op, NodeRef lhs, NodeRef rhs) {
    return std::make_shared<const FormulaNode>(FormulaNode{op, 0, {}, std::move(lhs), std::move(rhs), {}});
}

NodeRef make_quantifier(Op op, std::size_t sort, NodeRef body, std::string hint) {
    return std::make_shared<const FormulaNode>(FormulaNode{op, sort, {}, std::move(body), nullptr, std::move(hint)});
}

bool alpha_equal(const FormulaNode& a, const FormulaNode& b) {
    if (&a == &b) return true;
    if (a.op != b.op || a.symbol != b.symbol || a.args != b.args) return false;
    if (static_cast<bool>(a.left) != static_cast<bool>(b.left)) return false;
    if (static_cast<bool>(a.right) != static_cast<bool>(b.right)) return false;
    if (a.left && !alpha_equal(*a.left, *b.left)) return false;
    return !a.right || alpha_equal(*a.right, *b.right);
}

namespace {

bool is_quantifier(Op op) { return op == Op::forall || op == Op::exists; }

void validate_term(const Signature& sig, const std::vector<FreeVar>& free, const std::vector<std::size_t>& binders,
                   const Term& t) {
    switch (t.kind) {
    case Term::Kind::bound:
        if (t.index >= binders.size()) throw ValidationError("dangling bound variable index");
        if (binders[binders.size() - 1 - t.index] != t.sort) throw ValidationError("bound variable sort mismatch");
        break;
    case Term::Kind::free:
        if (t.index >= free.size()) throw ValidationError("undeclared free variable slot");
        if (free[t.index].sort != t.sort) throw ValidationError("free variable sort mismatch");
        break;
    case Term::Kind::constant:
        if (t.index >= sig.constants().size()) throw ValidationError("unknown constant index");
        if (sig.constants()[t.index].sort != t.sort) throw ValidationError("constant sort mismatch");
        break;
    }
}

void validate(const Signature& sig, const std::vector<FreeVar>& free, std::vector<std::size_t>& binders,
              const FormulaNode& n) {
    switch (n.op) {
    case Op::atom: {
        if (n.symbol >= sig.relations().size()) throw ValidationError("unknown relation index");
        const auto& rel = sig.relations()[n.symbol];
        if (n.args.size() != rel.profile.size())
            throw ValidationError("relation '" + rel.name + "' expects " + std::to_string(rel.profile.size()) +
                                  " arguments, got " + std::to_string(n.args.size()));
        for (std::size_t i = 0; i < n.args.size(); ++i) {
            validate_term(sig, free, binders, n.args[i]);
            if (n.args[i].sort != rel.profile[i])
                throw ValidationError("argument " + std::to_string(i + 1) + " of '" + rel.name + "' must have sort " +
                                      sig.entities()[rel.profile[i]] + ", got " + sig.entities()[n.args[i].sort]);
        }
        break;
    }
    case Op::equal:
        if (n.args.size() != 2) throw ValidationError("equality needs two terms");
        validate_term(sig, free, binders, n.args[0]);
        validate_term(sig, free, binders, n.args[1]);
        if (n.args[0].sort != n.args[1].sort)
            throw ValidationError("equality between sorts " + sig.entities()[n.args[0].sort] + " and " +
                                  sig.entities()[n.args[1].sort]);
        break;
    case Op::negation:
        if (!n.left) throw ValidationError("negation without operand");
        validate(sig, free, binders, *n.left);
        break;
    case Op::forall:
    case Op::exists:
        if (!n.left) throw ValidationError("quantifier without body");
        if (n.symbol >= sig.entities().size()) throw ValidationError("unknown quantifier sort");
        binders.push_back(n.symbol);
        validate(sig, free, binders, *n.left);
        binders.pop_back();
        break;
    default:
        if (!n.left || !n.right) throw ValidationError("binary connective missing an operand");
        validate(sig, free, binders, *n.left);
        validate(sig, free, binders, *n.right);
    }
}

void collect_free(const FormulaNode& n, std::vector<bool>& seen) {
    for (const auto& t : n.args)
        if (t.kind == Term::Kind::free) seen[t.index] = true;
    if (n.left) collect_free(*n.left, seen);
    if (n.right) collect_free(*n.right, seen);
}

// ---- printer ----------------------------------------------------------------

int precedence(Op op) {
    switch (op) {
    case Op::biconditional: return 1;
    case Op::implication: return 2;
    case Op::disjunction: return 3;
    case Op::conjunction: return 4;
    case Op::negation: return 5;
    case Op::forall:
    case Op::exists: return 0;
    default: return 6;
    }
}

const char* symbol_of(Op op) {
    switch (op) {
    case Op::conjunction: return " & ";
    case Op::disjunction: return " | ";
    case Op::implication: return " -> ";
    case Op::biconditional: return " <-> ";
    default: return "";
    }
}

class Printer {
public:
    Printer(const Signature& sig, const std::vector<FreeVar>& free) : sig_(sig), free_(free) {}

    void node(const FormulaNode& n) {
        switch (n.op) {
        case Op::atom:
            out_ << sig_.relations()[n.symbol].name << '(';
            for (std::size_t i = 0; i < n.args.size(); ++i) {
                if (i) out_ << ", ";
                term(n.args[i]);
            }
            out_ << ')';
            break;
        case Op::equal:
            term(n.args[0]);
            out_ << " = ";
            term(n.args[1]);
            break;
        case Op::negation:
            out_ << '~';
            child(*n.left, precedence(Op::negation), false);
            break;
        case Op::forall:
        case Op::exists: {
            auto name = variable_name(names_.size());
            out_ << (n.op == Op::forall ? "forall " : "exists ") << name << ':' << sig_.entities()[n.symbol] << ". ";
            names_.push_back(name);
            node(*n.left);
            names_.pop_back();
            break;
        }
        default: {
            int p = precedence(n.op);
            // Same-operator children go parenthesised on the side opposite to the parser's associativity.
            bool right_assoc = n.op == Op::implication;
            child(*n.left, p, n.left->op == n.op && right_assoc);
            out_ << symbol_of(n.op);
            child(*n.right, p, n.right->op == n.op && !right_assoc);
        }
        }
    }

    std::string str() const { return out_.str(); }

private:
    void child(const FormulaNode& c, int parent_prec, bool force) {
        bool parens = force || is_quantifier(c.op) || precedence(c.op) < parent_prec;
        if (parens) out_ << '(';
        node(c);
        if (parens) out_ << ')';
    }

    void term(const Term& t) {
        switch (t.kind) {
        case Term::Kind::bound: out_ << names_[names_.size() - 1 - t.index]; break;
        case Term::Kind::free: out_ << free_[t.index].name; break;
        case Term::Kind::constant: out_ << sig_.constants()[t.index].name; break;
        }
    }

    bool taken(const std::string& s) const {
        if (sig_.find_constant(s) || sig_.find_relation(s)) return true;
        return std::any_of(free_.begin(), free_.end(), [&](const FreeVar& v) { return v.name == s; });
    }

    // Depth-indexed names; deterministic so that α-equivalent formulas print alike.
    std::string variable_name(std::size_t depth) const {
        static const char* base[] = {"x", "y", "z", "u", "v", "w"};
        std::size_t skip = 0;
        for (std::size_t k = 0;; ++k) {
            std::string candidate = k < 6 ? base[k] : "x" + std::to_string(k);
            if (taken(candidate)) continue;
            if (skip++ == depth) return candidate;
        }
    }

    const Signature& sig_;
    const std::vector<FreeVar>& free_;
    std::vector<std::string> names_;
    std::ostringstream out_;
};

// ---- parser -----------------------------------------------------------------

enum class Tok { ident, lparen, rparen, comma, colon, dot, tilde, amp, bar, arrow, iff, equals, end };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\''))
                ++j;
            out.push_back({Tok::ident, std::string(s.substr(i, j - i)), i});
            i = j;
            continue;
        }
        auto single = [&](Tok k) {
            out.push_back({k, std::string(1, c), i});
            ++i;
        };
        switch (c) {
        case '(': single(Tok::lparen); break;
        case ')': single(Tok::rparen); break;
        case ',': single(Tok::comma); break;
        case ':': single(Tok::colon); break;
        case '.': single(Tok::dot); break;
        case '~': single(Tok::tilde); break;
        case '&': single(Tok::amp); break;
        case '|': single(Tok::bar); break;
        case '=': single(Tok::equals); break;
        case '-':
            if (s.substr(i, 2) == "->") {
                out.push_back({Tok::arrow, "->", i});
                i += 2;
                break;
            }
            throw ParseError(0, "unexpected '-' at column " + std::to_string(i + 1));
        case '<':
            if (s.substr(i, 3) == "<->") {
                out.push_back({Tok::iff, "<->", i});
                i += 3;
                break;
            }
            throw ParseError(0, "unexpected '<' at column " + std::to_string(i + 1));
        default:
            throw ParseError(0, std::string("unexpected character '") + c + "' at column " + std::to_string(i + 1));
        }
    }
    out.push_back({Tok::end, "", s.size()});
    return out;
}

class Parser {
public:
    Parser(const Signature& sig, const std::vector<FreeVar>& free, std::string_view text)
        : sig_(sig), free_(free), toks_(tokenize(text)) {}

    NodeRef parse() {
        auto n = biconditional();
        if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "'");
        return n;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& take() { return toks_[pos_++]; }
    bool accept(Tok k) {
        if (peek().kind != k) return false;
        ++pos_;
        return true;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        const auto& t = peek();
        throw ParseError(0, msg + (t.kind == Tok::end ? " at end of input" : " at column " + std::to_string(t.pos + 1)));
    }
    const Token& expect(Tok k, const char* what) {
        if (peek().kind != k) fail(std::string("expected ") + what);
        return take();
    }

    NodeRef biconditional() {
        auto lhs = implication();
        while (accept(Tok::iff)) lhs = make_binary(Op::biconditional, lhs, implication());
        return lhs;
    }

    NodeRef implication() {
        auto lhs = disjunction();
        if (accept(Tok::arrow)) return make_binary(Op::implication, lhs, implication());
        return lhs;
    }

    NodeRef disjunction() {
        auto lhs = conjunction();
        while (accept(Tok::bar)) lhs = make_binary(Op::disjunction, lhs, conjunction());
        return lhs;
    }

    NodeRef conjunction() {
        auto lhs = unary();
        while (accept(Tok::amp)) lhs = make_binary(Op::conjunction, lhs, unary());
        return lhs;
    }

    NodeRef unary() {
        if (accept(Tok::tilde)) return make_not(unary());
        if (peek().kind == Tok::ident && (peek().text == "forall" || peek().text == "exists")) {
            Op op = take().text == "forall" ? Op::forall : Op::exists;
            const auto& var = expect(Tok::ident, "a variable name");
            if (is_keyword(var.text)) fail("keyword used as variable name");
            expect(Tok::colon, "':' after the bound variable");
            const auto& sort_tok = expect(Tok::ident, "a sort name");
            auto sort = sig_.find_entity(sort_tok.text);
            if (!sort) throw ParseError(0, "unknown sort '" + sort_tok.text + "'");
            expect(Tok::dot, "'.' after the quantifier prefix");
            scope_.push_back({var.text, *sort});
            auto body = biconditional();
            scope_.pop_back();
            return make_quantifier(op, *sort, body, var.text);
        }
        return primary();
    }

    NodeRef primary() {
        if (accept(Tok::lparen)) {
            auto inner = biconditional();
            expect(Tok::rparen, "')'");
            return inner;
        }
        if (peek().kind != Tok::ident) fail("expected a formula");
        if (toks_[pos_ + 1].kind == Tok::lparen) {
            const auto& name = take();
            auto rel = sig_.find_relation(name.text);
            if (!rel) throw ParseError(0, "unknown relation '" + name.text + "'");
            take();
            std::vector<Term> args;
            if (peek().kind != Tok::rparen) {
                do args.push_back(term());
                while (accept(Tok::comma));
            }
            expect(Tok::rparen, "')' closing the argument list");
            const auto& r = sig_.relations()[*rel];
            if (args.size() != r.profile.size())
                throw ParseError(0, "arity mismatch: '" + r.name + "' expects " + std::to_string(r.profile.size()) +
                                        " arguments, got " + std::to_string(args.size()));
            for (std::size_t i = 0; i < args.size(); ++i)
                if (args[i].sort != r.profile[i])
                    throw ParseError(0, "sort mismatch: argument " + std::to_string(i + 1) + " of '" + r.name +
                                            "' must be " + sig_.entities()[r.profile[i]] + ", got " +
                                            sig_.entities()[args[i].sort]);
            return make_atom(*rel, std::move(args));
        }
        auto lhs = term();
        expect(Tok::equals, "'=' or a relation atom");
        auto rhs = term();
        if (lhs.sort != rhs.sort)
            throw ParseError(0, "sort mismatch: equality between " + sig_.entities()[lhs.sort] + " and " +
                                    sig_.entities()[rhs.sort]);
        return make_equal(lhs, rhs);
    }

    Term term() {
        const auto& tok = expect(Tok::ident, "a term");
        for (std::size_t k = scope_.size(); k-- > 0;)
            if (scope_[k].first == tok.text) return Term::bound(scope_.size() - 1 - k, scope_[k].second);
        for (std::size_t k = 0; k < free_.size(); ++k)
            if (free_[k].name == tok.text) return Term::free(k, free_[k].sort);
        if (auto c = sig_.find_constant(tok.text)) return Term::constant(sig_, *c);
        throw ParseError(0, "free variable '" + tok.text + "'");
    }

    const Signature& sig_;
    const std::vector<FreeVar>& free_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::vector<std::pair<std::string, std::size_t>> scope_;
};

}  // namespace

Formula::Formula(SignaturePtr sig, std::vector<FreeVar> free_vars, NodeRef root)
    : sig_(std::move(sig)), free_(std::move(free_vars)), root_(std::move(root)) {
    if (!sig_ || !root_) throw ValidationError("formula needs a signature and a root");
    for (std::size_t i = 0; i < free_.size(); ++i) {
        if (free_[i].sort >= sig_->entities().size()) throw ValidationError("free variable of unknown sort");
        for (std::size_t j = 0; j < i; ++j)
            if (free_[j].name == free_[i].name) throw ValidationError("duplicate free variable '" + free_[i].name + "'");
    }
    std::vector<std::size_t> binders;
    validate(*sig_, free_, binders, *root_);
}

std::vector<bool> Formula::occurring_free() const {
    std::vector<bool> seen(free_.size(), false);
    collect_free(*root_, seen);
    return seen;
}

Sentence::Sentence(const Formula& f) : formula_(f) {
    auto occ = f.occurring_free();
    for (std::size_t i = 0; i < occ.size(); ++i)
        if (occ[i]) throw ValidationError("free variable '" + f.free_vars()[i].name + "' in a sentence");
    // Drop the unused declarations so the key is context-independent.
    if (!f.free_vars().empty()) formula_ = Formula(f.signature(), {}, f.root_ptr());
    key_ = print(formula_);
}

std::string print(const Formula& f) {
    Printer p(f.sig(), f.free_vars());
    p.node(f.root());
    return p.str();
}

Formula parse_formula(const SignaturePtr& sig, std::string_view text, std::vector<FreeVar> free_vars) {
    Parser p(*sig, free_vars, text);
    auto root = p.parse();
    return Formula(sig, std::move(free_vars), std::move(root));
}

Sentence parse_sentence(const SignaturePtr& sig, std::string_view text) {
    return Sentence(parse_formula(sig, text));
}

std::vector<Sentence> parse_sentence_list(const SignaturePtr& sig, std::string_view text) {
    std::vector<Sentence> out;
    for (const auto& [lineno, raw] : numbered_lines(text)) {
        auto line = trim(strip_comment(raw));
        if (line.empty()) continue;
        try {
            out.push_back(parse_sentence(sig, line));
        } catch (const ParseError& e) {
            throw ParseError(lineno, e.detail());
        } catch (const ValidationError& e) {
            throw ParseError(lineno, e.what());
        }
    }
    return out;
}

}  // namespace lot::logic
