#include "geitip/bench.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "geitip/errors.hpp"

namespace geitip {

int Permutation::apply(int i) const {
    if (i < 1 || i > 4)
        throw domain_error("permutation acts on {1,2,3,4}");
    return map[static_cast<std::size_t>(i) - 1];
}

std::vector<Permutation> Permutation::all() {
    std::array<int, 4> base{1, 2, 3, 4};
    std::vector<Permutation> out;
    std::sort(base.begin(), base.end());
    do {
        out.push_back(Permutation{base});
    } while (std::next_permutation(base.begin(), base.end()));
    return out;
}

std::string apply_permutation(const Permutation& pi, const std::string& rv_name) {
    auto digit = [&](char c) {
        if (c < '1' || c > '4')
            throw domain_error("variable name index out of range: " + rv_name);
        return c - '0';
    };
    if (rv_name.size() == 2 && rv_name[0] == 'W')
        return "W" + std::to_string(pi.apply(digit(rv_name[1])));
    if (rv_name.size() == 3 && rv_name[0] == 'S')
        return "S" + std::to_string(pi.apply(digit(rv_name[1]))) +
               std::to_string(pi.apply(digit(rv_name[2])));
    throw domain_error("expected a name of the form Wi or Sij: " + rv_name);
}

namespace {

Statement eq_statement(Expr lhs, Expr rhs) {
    Statement s;
    s.lhs = std::move(lhs);
    s.rel = Relation::eq;
    s.rhs = std::move(rhs);
    return s;
}

Expr mi(VarGroup a, VarGroup b, VarGroup cond = {}) {
    return {{Rational(1), Measure::mutual(std::move(a), std::move(b), std::move(cond))}};
}

Expr ent(VarGroup g, VarGroup cond = {}) {
    return {{Rational(1), Measure::entropy_of(std::move(g), std::move(cond))}};
}

Expr scal(const std::string& name, Rational c = Rational(1)) {
    return {{std::move(c), Measure::scalar_named(name)}};
}

}  // namespace

NamedProblem dfz_problem() {
    ProblemStatement ps;
    ps.vars = {"A", "B", "C", "D", "X", "Y", "Z", "W"};

    ps.objective.lhs = mi({"B"}, {"D", "X", "Z"});
    ps.objective.rel = Relation::le;
    ps.objective.rhs = mi({"W"}, {"A", "B", "C", "D"});

    auto& cs = ps.constraints;
    cs.push_back(eq_statement(mi({"W"}, {"A", "B", "C", "D"}), mi({"X"}, {"A", "B", "W"})));
    cs.push_back(eq_statement(mi({"W"}, {"A", "B", "C", "D"}), mi({"Y"}, {"B", "C", "X"})));
    cs.push_back(eq_statement(mi({"W"}, {"A", "B", "C", "D"}), mi({"Z"}, {"C", "D", "Y"})));
    cs.push_back(eq_statement(mi({"A"}, {"B", "C", "D", "Z"}), mi({"B"}, {"D", "X", "Z"})));
    cs.push_back(eq_statement(mi({"B"}, {"A", "D", "W", "Z"}), mi({"B"}, {"D", "X", "Z"})));
    cs.push_back(eq_statement(mi({"C"}, {"A", "D", "W", "Z"}), mi({"B"}, {"D", "X", "Z"})));
    cs.push_back(eq_statement(mi({"D"}, {"A", "B", "C", "Y"}), mi({"B"}, {"D", "X", "Z"})));
    cs.push_back(eq_statement(mi({"C"}, {"A", "W", "Y"}), mi({"B"}, {"D", "X", "Z"})));
    cs.push_back(eq_statement(mi({"B"}, {"A"}), {}));
    cs.push_back(eq_statement(mi({"C"}, {"A", "B"}), {}));
    cs.push_back(eq_statement(mi({"D"}, {"A", "B", "C"}), {}));
    cs.push_back(eq_statement(mi({"X"}, {"C", "D"}, {"A", "B", "W"}), {}));
    cs.push_back(eq_statement(mi({"Y"}, {"A", "D", "W"}, {"B", "C", "X"}), {}));
    cs.push_back(eq_statement(mi({"Z"}, {"A", "B", "W", "X"}, {"C", "D", "Y"}), {}));

    NamedProblem np;
    np.name = "dfz";
    np.payload = std::move(ps);
    np.expected.coordinates = 255;
    np.expected.equalities = 14;
    np.expected.inequalities = 1800;
    // One elemental form vanishes under the constraints; the rest stay
    // distinct. The constraint span covers all 241 reduced coordinates, so
    // the slack-only block has 1799 - 241 rows.
    np.expected.reduced_inequalities = 1799;
    np.expected.slack_rows = 1558;
    np.expected.provable = true;
    return np;
}

namespace {

// Storage problem layout: twelve retained variables, in this index order.
const std::vector<std::string>& storage_names() {
    static const std::vector<std::string> names = {"W1",  "W2",  "W4",  "S21", "S31", "S41",
                                                   "S12", "S32", "S42", "S14", "S24", "S34"};
    return names;
}

std::map<std::string, int> storage_index() {
    std::map<std::string, int> out;
    const auto& names = storage_names();
    for (std::size_t i = 0; i < names.size(); ++i)
        out[names[i]] = static_cast<int>(i);
    return out;
}

VarGroup mask_to_group(std::uint32_t mask) {
    VarGroup g;
    const auto& names = storage_names();
    for (std::size_t i = 0; i < names.size(); ++i)
        if (mask & (1u << i))
            g.push_back(names[i]);
    return g;
}

}  // namespace

NamedProblem tian_problem() {
    ProblemStatement ps;
    ps.vars = storage_names();
    ps.scalars = {"alpha", "beta", "B"};

    Expr lhs = scal("alpha", Rational(4));
    Expr beta_term = scal("beta", Rational(6));
    lhs.insert(lhs.end(), beta_term.begin(), beta_term.end());
    ps.objective.lhs = std::move(lhs);
    ps.objective.rel = Relation::ge;
    ps.objective.rhs = scal("B", Rational(3));

    auto index = storage_index();

    // Symmetry: H(pi(A), pi(B)) = H(A, B) whenever both sides stay within the
    // retained variables. One constraint per distinct ordered (source, image)
    // pair, so a relation and its inverse both appear.
    auto perms = Permutation::all();
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (std::uint32_t amask = 0; amask < (1u << 9); ++amask) {
        for (std::uint32_t bmask = 0; bmask < (1u << 3); ++bmask) {
            std::uint32_t orig = (amask << 3) | bmask;  // S vars sit at indices 3..11
            if (orig == 0)
                continue;
            for (const auto& pi : perms) {
                std::uint32_t image = 0;
                bool ok = true;
                for (std::size_t i = 0; i < 12 && ok; ++i) {
                    if (!(orig & (1u << i)))
                        continue;
                    std::string mapped = apply_permutation(pi, storage_names()[i]);
                    auto it = index.find(mapped);
                    if (it == index.end())
                        ok = false;
                    else
                        image |= 1u << it->second;
                }
                if (!ok || image == orig)
                    continue;
                if (!seen.insert({orig, image}).second)
                    continue;
                ps.constraints.push_back(
                    eq_statement(ent(mask_to_group(image)), ent(mask_to_group(orig))));
            }
        }
    }

    // Each stored piece is a function of its source: H(S_{i,j} | W_i) = 0.
    for (const auto& s : {"S21", "S41", "S12", "S42", "S14", "S24"}) {
        std::string w = std::string("W") + s[1];
        ps.constraints.push_back(eq_statement(ent({s}, {w}), {}));
    }
    // Each source is recoverable from the pieces stored about it.
    ps.constraints.push_back(eq_statement(ent({"W1"}, {"S21", "S31", "S41"}), {}));
    ps.constraints.push_back(eq_statement(ent({"W2"}, {"S12", "S32", "S42"}), {}));
    ps.constraints.push_back(eq_statement(ent({"W4"}, {"S14", "S24", "S34"}), {}));

    // Any set containing all three sources carries full rank B.
    for (std::uint32_t t = 0; t < (1u << 9); ++t) {
        std::uint32_t mask = (t << 3) | 0x7u;
        ps.constraints.push_back(eq_statement(ent(mask_to_group(mask)), scal("B")));
    }

    // Rate bounds.
    for (const auto& w : {"W1", "W2", "W4"}) {
        Statement s;
        s.lhs = ent({w});
        s.rel = Relation::le;
        s.rhs = scal("alpha");
        ps.constraints.push_back(std::move(s));
    }
    for (const auto& sv : {"S21", "S31", "S41", "S12", "S32", "S42", "S14", "S24", "S34"}) {
        Statement s;
        s.lhs = ent({sv});
        s.rel = Relation::le;
        s.rhs = scal("beta");
        ps.constraints.push_back(std::move(s));
    }

    NamedProblem np;
    np.name = "tian";
    np.payload = std::move(ps);
    np.expected.coordinates = 4098;
    np.expected.equalities = 22945;
    np.expected.inequalities = 67608;
    np.expected.reduced_inequalities = 10189;
    // The constraints span 600 of the reduced coordinates, so the slack-only
    // block has 10189 - 600 rows.
    np.expected.slack_rows = 9589;
    np.expected.provable = true;
    return np;
}

namespace {

LinearForm slack_form(std::initializer_list<std::pair<int, Rational>> terms) {
    LinearForm f;
    for (const auto& [idx, c] : terms)
        f.add_term(Variable::slack(static_cast<std::uint32_t>(idx)), c);
    return f;
}

SlackSet slack_range(int from, int to) {
    SlackSet s;
    for (int i = from; i <= to; ++i)
        s.insert(Variable::slack(static_cast<std::uint32_t>(i)));
    return s;
}

}  // namespace

NamedProblem fixture(const std::string& name) {
    NamedProblem np;
    np.name = name;
    if (name == "example_III_4") {
        SlackProblem p;
        p.objective = slack_form({{1, 1}, {2, 2}, {3, -1}});
        p.rows = {slack_form({{1, 1}, {2, 1}, {3, -1}, {4, -1}, {5, -1}}),
                  slack_form({{1, 1}, {4, 1}})};
        p.bounded = slack_range(1, 5);
        np.payload = std::move(p);
        np.expected.provable = true;
        return np;
    }
    if (name == "example_III_5") {
        SlackProblem p;
        p.objective = slack_form({{1, Rational(-1, 2)},
                                  {2, -1},
                                  {3, 1},
                                  {4, 1},
                                  {5, 1},
                                  {6, -1},
                                  {7, 1},
                                  {9, 1}});
        p.rows = {slack_form({{1, 1}, {2, 1}, {3, -1}, {4, -1}}),
                  slack_form({{1, 1}, {2, 1}, {4, -1}, {9, 1}, {10, 1}, {11, -1}, {12, -1}}),
                  slack_form({{6, 1}, {9, -1}, {10, -1}, {11, 1}, {12, 1}}),
                  slack_form({{5, 1}, {6, -2}}),
                  slack_form({{7, 1}, {8, 1}})};
        p.bounded = slack_range(1, 12);
        np.payload = std::move(p);
        np.expected.provable = true;
        return np;
    }
    if (name == "example_IV_1") {
        ProblemStatement ps;
        ps.vars = {"X1", "X2", "X3", "X4"};
        ps.objective.lhs = ent({"X1"});
        ps.objective.rel = Relation::ge;
        ps.objective.rhs = ent({"X4"});
        for (const auto& x : {"X1", "X2", "X3"})
            ps.constraints.push_back(eq_statement(mi({x}, {"X4"}), {}));
        ps.constraints.push_back(eq_statement(ent({"X4"}, {"X1", "X2"}), {}));
        ps.constraints.push_back(eq_statement(ent({"X4"}, {"X1", "X3"}), {}));
        ps.constraints.push_back(eq_statement(ent({"X4"}, {"X2", "X3"}), {}));
        np.payload = std::move(ps);
        np.expected.coordinates = 15;
        np.expected.equalities = 6;
        np.expected.inequalities = 28;
        np.expected.reduced_inequalities = 18;
        np.expected.slack_rows = 9;
        np.expected.provable = true;
        return np;
    }
    if (name == "data_processing") {
        ProblemStatement ps;
        ps.vars = {"X", "Y", "Z", "T"};
        ps.objective.lhs = mi({"X"}, {"T"});
        ps.objective.rel = Relation::le;
        ps.objective.rhs = mi({"Y"}, {"Z"});
        ps.constraints = markov_statements({{"X"}, {"Y"}, {"Z"}, {"T"}});
        np.payload = std::move(ps);
        np.expected.coordinates = 15;
        np.expected.equalities = 2;
        np.expected.inequalities = 28;
        np.expected.provable = true;
        return np;
    }
    throw domain_error("unknown fixture '" + name + "'");
}

std::vector<std::string> fixture_names() {
    return {"example_III_4", "example_III_5", "example_IV_1", "data_processing"};
}

std::vector<std::string> bench_names() {
    auto names = fixture_names();
    names.insert(names.begin(), {"dfz", "tian"});
    return names;
}

NamedProblem bench(const std::string& name) {
    if (name == "dfz")
        return dfz_problem();
    if (name == "tian")
        return tian_problem();
    return fixture(name);
}

std::string NamedProblem::to_input_text() const {
    if (!is_statement())
        throw domain_error("slack-space problems have no text input form; use --bench " + name);
    return print(statement());
}

}  // namespace geitip
