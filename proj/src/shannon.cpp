#include "geitip/shannon.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "geitip/errors.hpp"

namespace geitip {

Measure Measure::entropy_of(VarGroup g, VarGroup cond) {
    Measure m;
    m.kind = Kind::entropy;
    m.left = std::move(g);
    m.cond = std::move(cond);
    return m;
}

Measure Measure::mutual(VarGroup a, VarGroup b, VarGroup cond) {
    Measure m;
    m.kind = Kind::mutual_info;
    m.left = std::move(a);
    m.right = std::move(b);
    m.cond = std::move(cond);
    return m;
}

Measure Measure::scalar_named(std::string name) {
    Measure m;
    m.kind = Kind::scalar;
    m.scalar = std::move(name);
    return m;
}

// ---------------------------------------------------------------------------
// Tokenizer / parser
// ---------------------------------------------------------------------------

namespace {

struct Token {
    enum class Kind { ident, number, punct, rel, end };
    Kind kind;
    std::string text;
    int column;
};

class LineLexer {
public:
    LineLexer(const std::string& line, int line_no) : line_(line), line_no_(line_no) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& msg, int column) const {
        std::ostringstream out;
        out << "line " << line_no_ << ", column " << column << ": " << msg;
        throw parse_error(out.str(), line_no_, column);
    }
    [[noreturn]] void fail(const std::string& msg) const { fail(msg, tok_.column); }

private:
    void advance() {
        while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_])))
            ++pos_;
        int col = static_cast<int>(pos_) + 1;
        if (pos_ >= line_.size() || line_[pos_] == '#') {
            tok_ = {Token::Kind::end, "", col};
            return;
        }
        char c = line_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < line_.size() &&
                   (std::isalnum(static_cast<unsigned char>(line_[pos_])) || line_[pos_] == '_'))
                ++pos_;
            tok_ = {Token::Kind::ident, line_.substr(start, pos_ - start), col};
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < line_.size() && std::isdigit(static_cast<unsigned char>(line_[pos_])))
                ++pos_;
            tok_ = {Token::Kind::number, line_.substr(start, pos_ - start), col};
            return;
        }
        if (c == '>' || c == '<') {
            if (pos_ + 1 >= line_.size() || line_[pos_ + 1] != '=')
                fail(std::string("expected '=' after '") + c + "'", col);
            tok_ = {Token::Kind::rel, line_.substr(pos_, 2), col};
            pos_ += 2;
            return;
        }
        if (c == '=') {
            tok_ = {Token::Kind::rel, "=", col};
            ++pos_;
            return;
        }
        static const std::string puncts = "(),;|+-*/";
        if (puncts.find(c) != std::string::npos) {
            tok_ = {Token::Kind::punct, std::string(1, c), col};
            ++pos_;
            return;
        }
        fail(std::string("unexpected character '") + c + "'", col);
    }

    const std::string& line_;
    int line_no_;
    std::size_t pos_ = 0;
    Token tok_{Token::Kind::end, "", 1};
};

class StatementParser {
public:
    StatementParser(LineLexer& lex) : lex_(lex) {}

    Statement parse_statement() {
        Statement s;
        s.lhs = parse_expr();
        const Token& t = lex_.peek();
        if (t.kind != Token::Kind::rel)
            lex_.fail("expected '>=', '<=' or '='");
        std::string rel = lex_.next().text;
        s.rel = rel == ">=" ? Relation::ge : rel == "<=" ? Relation::le : Relation::eq;
        s.rhs = parse_expr();
        if (lex_.peek().kind != Token::Kind::end)
            lex_.fail("trailing input after statement");
        return s;
    }

private:
    bool at_punct(const char* p) const {
        return lex_.peek().kind == Token::Kind::punct && lex_.peek().text == p;
    }

    void expect_punct(const char* p) {
        if (!at_punct(p))
            lex_.fail(std::string("expected '") + p + "'");
        lex_.next();
    }

    Rational parse_number() {
        std::string num = lex_.next().text;
        if (at_punct("/")) {
            lex_.next();
            if (lex_.peek().kind != Token::Kind::number)
                lex_.fail("expected denominator");
            num += "/" + lex_.next().text;
        }
        return parse_rational(num);
    }

    VarGroup parse_group() {
        VarGroup g;
        while (true) {
            if (lex_.peek().kind != Token::Kind::ident)
                lex_.fail("expected a variable name");
            g.push_back(lex_.next().text);
            if (!at_punct(","))
                break;
            lex_.next();
        }
        return g;
    }

    Measure parse_measure(const std::string& head, int col) {
        expect_punct("(");
        if (head == "H") {
            VarGroup g = parse_group();
            VarGroup cond;
            if (at_punct("|")) {
                lex_.next();
                cond = parse_group();
            }
            expect_punct(")");
            return Measure::entropy_of(std::move(g), std::move(cond));
        }
        if (head == "I") {
            VarGroup a = parse_group();
            expect_punct(";");
            VarGroup b = parse_group();
            VarGroup cond;
            if (at_punct("|")) {
                lex_.next();
                cond = parse_group();
            }
            expect_punct(")");
            return Measure::mutual(std::move(a), std::move(b), std::move(cond));
        }
        lex_.fail("unknown measure '" + head + "'", col);
    }

    // term := [rational ['*']] atom | rational
    // atom := H([...]) | I(...) | scalar-name
    bool parse_term(Expr& expr, const Rational& sign) {
        Rational coeff = sign;
        bool have_coeff = false;
        if (lex_.peek().kind == Token::Kind::number) {
            coeff *= parse_number();
            have_coeff = true;
            if (at_punct("*"))
                lex_.next();
        }
        if (lex_.peek().kind == Token::Kind::ident) {
            Token head = lex_.next();
            Measure m = (head.text == "H" || head.text == "I")
                            ? parse_measure(head.text, head.column)
                            : Measure::scalar_named(head.text);
            expr.push_back({std::move(coeff), std::move(m)});
            return true;
        }
        if (!have_coeff)
            lex_.fail("expected a term");
        // Bare rational literal: only 0 keeps the statement homogeneous.
        if (sgn(coeff) != 0)
            lex_.fail("nonzero constant terms are not allowed");
        return true;
    }

    Expr parse_expr() {
        Expr expr;
        Rational sign(1);
        if (at_punct("+") || at_punct("-")) {
            if (lex_.next().text == "-")
                sign = -1;
        }
        parse_term(expr, sign);
        while (at_punct("+") || at_punct("-")) {
            sign = lex_.next().text == "-" ? -1 : 1;
            parse_term(expr, sign);
        }
        return expr;
    }

    LineLexer& lex_;
};

void check_names(const ProblemStatement& ps) {
    auto declared = [&](const std::string& name) {
        return std::find(ps.vars.begin(), ps.vars.end(), name) != ps.vars.end();
    };
    auto declared_scalar = [&](const std::string& name) {
        return std::find(ps.scalars.begin(), ps.scalars.end(), name) != ps.scalars.end();
    };
    auto check_group = [&](const VarGroup& g) {
        for (const auto& name : g)
            if (!declared(name))
                throw error("undeclared random variable '" + name + "'");
    };
    auto check_statement = [&](const Statement& s) {
        for (const Expr* e : {&s.lhs, &s.rhs}) {
            for (const auto& t : *e) {
                if (t.measure.kind == Measure::Kind::scalar) {
                    if (!declared_scalar(t.measure.scalar))
                        throw error("undeclared scalar '" + t.measure.scalar + "'");
                } else {
                    check_group(t.measure.left);
                    check_group(t.measure.right);
                    check_group(t.measure.cond);
                }
            }
        }
    };
    check_statement(ps.objective);
    for (const auto& c : ps.constraints)
        check_statement(c);
}

}  // namespace

ProblemStatement parse(const std::string& text) {
    ProblemStatement ps;
    bool have_objective = false;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        LineLexer lex(line, line_no);
        if (lex.peek().kind == Token::Kind::end)
            continue;
        if (lex.peek().kind == Token::Kind::ident &&
            (lex.peek().text == "vars" || lex.peek().text == "scalars")) {
            bool is_vars = lex.next().text == "vars";
            auto& target = is_vars ? ps.vars : ps.scalars;
            while (lex.peek().kind == Token::Kind::ident) {
                std::string name = lex.next().text;
                if (name == "H" || name == "I")
                    lex.fail("'" + name + "' is reserved for measures");
                if (std::find(target.begin(), target.end(), name) != target.end())
                    lex.fail("duplicate name '" + name + "'");
                target.push_back(name);
            }
            if (lex.peek().kind != Token::Kind::end)
                lex.fail("expected names only");
            if (target.empty())
                lex.fail("empty declaration");
            continue;
        }
        StatementParser sp(lex);
        Statement s = sp.parse_statement();
        if (!have_objective) {
            ps.objective = std::move(s);
            have_objective = true;
        } else {
            ps.constraints.push_back(std::move(s));
        }
    }
    if (ps.vars.empty())
        throw error("no random variables declared (missing 'vars' line)");
    if (!have_objective)
        throw error("no objective statement");
    check_names(ps);
    return ps;
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

void print_group(std::ostringstream& out, const VarGroup& g) {
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (i)
            out << ",";
        out << g[i];
    }
}

void print_expr(std::ostringstream& out, const Expr& e) {
    if (e.empty()) {
        out << "0";
        return;
    }
    bool first = true;
    for (const auto& t : e) {
        int s = sgn(t.coeff);
        Rational mag = abs(t.coeff);
        if (first) {
            if (s < 0)
                out << "-";
        } else {
            out << (s < 0 ? " - " : " + ");
        }
        if (mag != 1)
            out << to_string(mag) << " ";
        out << print(t.measure);
        first = false;
    }
}

}  // namespace

std::string print(const Measure& m) {
    std::ostringstream out;
    switch (m.kind) {
        case Measure::Kind::scalar:
            out << m.scalar;
            break;
        case Measure::Kind::entropy:
            out << "H(";
            print_group(out, m.left);
            if (!m.cond.empty()) {
                out << "|";
                print_group(out, m.cond);
            }
            out << ")";
            break;
        case Measure::Kind::mutual_info:
            out << "I(";
            print_group(out, m.left);
            out << ";";
            print_group(out, m.right);
            if (!m.cond.empty()) {
                out << "|";
                print_group(out, m.cond);
            }
            out << ")";
            break;
    }
    return out.str();
}

std::string print(const Statement& s) {
    std::ostringstream out;
    print_expr(out, s.lhs);
    out << (s.rel == Relation::ge ? " >= " : s.rel == Relation::le ? " <= " : " = ");
    print_expr(out, s.rhs);
    return out.str();
}

std::string print(const ProblemStatement& ps) {
    std::ostringstream out;
    out << "vars";
    for (const auto& v : ps.vars)
        out << " " << v;
    out << "\n";
    if (!ps.scalars.empty()) {
        out << "scalars";
        for (const auto& s : ps.scalars)
            out << " " << s;
        out << "\n";
    }
    out << print(ps.objective) << "\n";
    for (const auto& c : ps.constraints)
        out << print(c) << "\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Expansion
// ---------------------------------------------------------------------------

namespace {

std::uint32_t group_mask(const VarGroup& g, const VariableUniverse& u) {
    std::uint32_t mask = 0;
    for (const auto& name : g) {
        auto idx = u.rv_index(name);
        if (!idx)
            throw universe_error("undeclared random variable '" + name + "'");
        mask |= 1u << (*idx - 1);
    }
    return mask;
}

void add_entropy(LinearForm& f, std::uint32_t mask, const Rational& c) {
    if (mask != 0)  // h of the empty set is identically zero
        f.add_term(Variable::entropy(mask), c);
}

}  // namespace

LinearForm expand_measure(const Measure& m, const VariableUniverse& u) {
    LinearForm f;
    switch (m.kind) {
        case Measure::Kind::scalar: {
            auto ord = u.scalar_ordinal(m.scalar);
            if (!ord)
                throw universe_error("undeclared scalar '" + m.scalar + "'");
            f.add_term(Variable::scalar(*ord), Rational(1));
            break;
        }
        case Measure::Kind::entropy: {
            if (m.left.empty())
                throw domain_error("entropy of an empty group");
            std::uint32_t g = group_mask(m.left, u);
            std::uint32_t c = group_mask(m.cond, u);
            add_entropy(f, g | c, Rational(1));
            add_entropy(f, c, Rational(-1));
            break;
        }
        case Measure::Kind::mutual_info: {
            if (m.left.empty() || m.right.empty())
                throw domain_error("mutual information requires two nonempty groups");
            std::uint32_t a = group_mask(m.left, u);
            std::uint32_t b = group_mask(m.right, u);
            std::uint32_t c = group_mask(m.cond, u);
            add_entropy(f, a | c, Rational(1));
            add_entropy(f, b | c, Rational(1));
            add_entropy(f, a | b | c, Rational(-1));
            add_entropy(f, c, Rational(-1));
            break;
        }
    }
    return f;
}

ExpandedStatement expand_statement(const Statement& s, const VariableUniverse& u) {
    LinearForm lhs, rhs;
    for (const auto& t : s.lhs)
        lhs.add_scaled(t.coeff, expand_measure(t.measure, u));
    for (const auto& t : s.rhs)
        rhs.add_scaled(t.coeff, expand_measure(t.measure, u));
    ExpandedStatement out;
    out.equality = s.rel == Relation::eq;
    out.form = s.rel == Relation::le ? rhs - lhs : lhs - rhs;
    return out;
}

// ---------------------------------------------------------------------------
// Elemental inequalities
// ---------------------------------------------------------------------------

std::size_t elemental_count(int n) {
    if (n < 1 || n > 20)
        throw domain_error("elemental inequalities defined for 1 <= n <= 20");
    if (n == 1)
        return 1;
    std::size_t pairs = static_cast<std::size_t>(n) * (n - 1) / 2;
    return static_cast<std::size_t>(n) + pairs * (std::size_t(1) << (n - 2));
}

namespace {

// Spread the bits of `pool` so that positions `a` and `b` (a < b) are zero,
// mapping a packed (n-2)-bit index onto a subset of the other variables.
std::uint32_t spread_mask(std::uint32_t pool, int a, int b) {
    auto skip = [](std::uint32_t m, int bit) {
        std::uint32_t low = m & ((1u << bit) - 1);
        return ((m & ~((1u << bit) - 1)) << 1) | low;
    };
    return skip(skip(pool, a), b);
}

}  // namespace

namespace {

// Canonical enumeration, descending throughout: conditional entropies
// H(X_i|X_rest) for i = n..1, then I(X_i;X_j|X_K) with (i,j) descending
// (i, then j) and K running down as a bitmask. Slack numbering everywhere
// downstream derives from this order.
struct ElementalSpec {
    bool conditional;
    int i, j;          // 0-based; conditional uses i only
    std::uint32_t K;   // mutual information only
};

ElementalSpec elemental_spec(int n, std::size_t index) {
    if (index >= elemental_count(n))
        throw domain_error("elemental index out of range");
    if (n == 1)
        return {true, 0, 0, 0};
    if (index < static_cast<std::size_t>(n))
        return {true, n - 1 - static_cast<int>(index), 0, 0};
    std::size_t rest = index - static_cast<std::size_t>(n);
    std::uint32_t sub = std::uint32_t(1) << (n - 2);
    for (int i = n - 2; i >= 0; --i) {
        for (int j = n - 1; j > i; --j) {
            if (rest < sub) {
                std::uint32_t packed = sub - 1 - static_cast<std::uint32_t>(rest);
                return {false, i, j, spread_mask(packed, i, j)};
            }
            rest -= sub;
        }
    }
    throw internal_error("elemental enumeration out of sync");
}

}  // namespace

std::vector<LinearForm> elemental_inequalities(int n) {
    std::size_t total = elemental_count(n);
    std::vector<LinearForm> out;
    out.reserve(total);
    std::uint32_t all = (n == 32) ? ~0u : (1u << n) - 1u;
    for (std::size_t index = 0; index < total; ++index) {
        ElementalSpec s = elemental_spec(n, index);
        LinearForm f;
        if (s.conditional) {
            f.add_term(Variable::entropy(all), Rational(1));
            if (n > 1)
                f.add_term(Variable::entropy(all ^ (1u << s.i)), Rational(-1));
        } else {
            std::uint32_t a = 1u << s.i;
            std::uint32_t b = 1u << s.j;
            f.add_term(Variable::entropy(a | s.K), Rational(1));
            f.add_term(Variable::entropy(b | s.K), Rational(1));
            f.add_term(Variable::entropy(a | b | s.K), Rational(-1));
            if (s.K)
                f.add_term(Variable::entropy(s.K), Rational(-1));
        }
        out.push_back(std::move(f));
    }
    return out;
}

Measure elemental_measure(int n, std::size_t index, const VariableUniverse& u) {
    auto names_of = [&](std::uint32_t mask) {
        VarGroup g;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i))
                g.push_back(u.rv_names()[i]);
        return g;
    };
    ElementalSpec s = elemental_spec(n, index);
    if (s.conditional) {
        std::uint32_t all = (1u << n) - 1u;
        std::uint32_t i = 1u << s.i;
        return Measure::entropy_of(names_of(i), names_of(all ^ i));
    }
    return Measure::mutual(names_of(1u << s.i), names_of(1u << s.j), names_of(s.K));
}

// ---------------------------------------------------------------------------
// Markov chains
// ---------------------------------------------------------------------------

std::vector<Statement> markov_statements(const std::vector<VarGroup>& chain) {
    if (chain.size() < 2)
        throw domain_error("a Markov chain needs at least two groups");
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        for (const auto& name : chain[i]) {
            if (std::find(chain[i + 1].begin(), chain[i + 1].end(), name) != chain[i + 1].end())
                throw domain_error("adjacent Markov groups overlap on '" + name + "'");
        }
    }
    std::vector<Statement> out;
    VarGroup past = chain[0];
    for (std::size_t i = 1; i + 1 < chain.size(); ++i) {
        Statement s;
        s.lhs.push_back({Rational(1), Measure::mutual(past, chain[i + 1], chain[i])});
        s.rel = Relation::eq;
        // rhs stays empty: "... = 0"
        out.push_back(std::move(s));
        past.insert(past.end(), chain[i].begin(), chain[i].end());
    }
    return out;
}

std::vector<LinearForm> markov_to_constraints(const std::vector<VarGroup>& chain,
                                              const VariableUniverse& u) {
    std::vector<LinearForm> out;
    for (const auto& s : markov_statements(chain))
        out.push_back(expand_statement(s, u).form);
    return out;
}

}  // namespace geitip
