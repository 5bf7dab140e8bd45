#include "subdeg/expr.hpp"

#include <algorithm>
#include <cctype>

#include "subdeg/errors.hpp"
#include "subdeg/zm.hpp"

namespace subdeg {

namespace {

struct Cursor {
    const std::string& text;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    char take() {
        skip_ws();
        return text[pos++];
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw usage_error("position " + std::to_string(pos) + ": " + msg);
    }
    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos;
    }
    long long integer() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected a number");
        if (pos - start > 12) fail("number too large");
        return std::stoll(text.substr(start, pos - start));
    }
};

// one parenthesized cycle, e.g. (1 2 3); 1-based in text, 0-based out
std::vector<int> parse_cycle(Cursor& cur, int degree) {
    cur.expect('(');
    std::vector<int> pts;
    while (cur.peek() != ')') {
        if (cur.eof()) cur.fail("unterminated cycle");
        if (cur.peek() == ',') {
            ++cur.pos;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(cur.peek()))) cur.fail("expected a cycle point");
        if (degree <= 9) {
            pts.push_back(cur.text[cur.pos++] - '0');
        } else {
            pts.push_back(static_cast<int>(cur.integer()));
        }
    }
    ++cur.pos;
    if (pts.empty()) cur.fail("empty cycle");
    for (int& p : pts) {
        if (p < 1 || p > degree) cur.fail("cycle point " + std::to_string(p) + " outside 1.." +
                                          std::to_string(degree));
        --p;
    }
    std::vector<char> seen(degree, 0);
    for (int p : pts) {
        if (seen[p]) cur.fail("repeated cycle point " + std::to_string(p + 1));
        seen[p] = 1;
    }
    return pts;
}

GroupExpr parse_atom(Cursor& cur) {
    if (cur.eof()) cur.fail("expected a group expression");
    GroupExpr e;
    size_t start = cur.pos;
    char c = cur.take();
    switch (std::toupper(static_cast<unsigned char>(c))) {
        case 'Z':
            if (cur.peek() == 'M' || cur.peek() == 'm') {
                ++cur.pos;
                e.kind = GroupExpr::Kind::zm;
                cur.expect('(');
                e.a = cur.integer();
                cur.expect(',');
                e.b = cur.integer();
                cur.expect(',');
                e.c = cur.integer();
                cur.expect(')');
                try {
                    validate_zm(e.a, e.b, e.c);
                } catch (const usage_error& zerr) {
                    cur.fail(zerr.what());
                }
                return e;
            }
            e.kind = GroupExpr::Kind::cyclic;
            e.a = cur.integer();
            if (e.a < 1) cur.fail("cyclic order must be at least 1");
            return e;
        case 'D':
            e.kind = GroupExpr::Kind::dihedral;
            e.a = cur.integer();
            if (e.a < 4 || e.a % 2 != 0)
                cur.fail("dihedral parameter is the group order and must be even, at least 4");
            return e;
        case 'S':
            e.kind = GroupExpr::Kind::symmetric;
            e.a = cur.integer();
            if (e.a < 1 || e.a > 6) cur.fail("symmetric degree must lie in 1..6");
            return e;
        case 'A':
            e.kind = GroupExpr::Kind::alternating;
            e.a = cur.integer();
            if (e.a < 2 || e.a > 6) cur.fail("alternating degree must lie in 2..6");
            return e;
        case 'P': {
            cur.pos = start;
            const std::string kw = "perm";
            for (char k : kw) {
                if (std::tolower(static_cast<unsigned char>(cur.peek())) != k) cur.fail("unknown group family");
                ++cur.pos;
            }
            e.kind = GroupExpr::Kind::perm;
            cur.expect('(');
            long long d = cur.integer();
            if (d < 1 || d > 16) cur.fail("perm degree must lie in 1..16");
            e.degree = static_cast<int>(d);
            cur.expect(')');
            cur.expect(':');
            e.cycles.push_back(parse_cycle(cur, e.degree));
            while (cur.peek() == ',') {
                ++cur.pos;
                e.cycles.push_back(parse_cycle(cur, e.degree));
            }
            return e;
        }
        default:
            cur.pos = start;
            cur.fail("unknown group family");
    }
}

}  // namespace

std::string GroupExpr::str() const {
    switch (kind) {
        case Kind::cyclic: return "Z" + std::to_string(a);
        case Kind::dihedral: return "D" + std::to_string(a);
        case Kind::symmetric: return "S" + std::to_string(a);
        case Kind::alternating: return "A" + std::to_string(a);
        case Kind::zm:
            return "ZM(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
        case Kind::perm: {
            std::string out = "perm(" + std::to_string(degree) + "):";
            for (size_t i = 0; i < cycles.size(); ++i) {
                if (i) out += ",";
                out += "(";
                for (size_t j = 0; j < cycles[i].size(); ++j) {
                    if (j) out += " ";
                    out += std::to_string(cycles[i][j] + 1);
                }
                out += ")";
            }
            return out;
        }
        case Kind::product: {
            std::string out;
            for (size_t i = 0; i < factors.size(); ++i) {
                if (i) out += "x";
                out += factors[i].str();
            }
            return out;
        }
    }
    return "";
}

bool operator==(const GroupExpr& l, const GroupExpr& r) {
    return l.kind == r.kind && l.a == r.a && l.b == r.b && l.c == r.c && l.degree == r.degree &&
           l.cycles == r.cycles && l.factors == r.factors;
}

GroupExpr parse_group_expr(const std::string& text) {
    Cursor cur{text};
    GroupExpr first = parse_atom(cur);
    std::vector<GroupExpr> factors;
    factors.push_back(std::move(first));
    while (!cur.eof()) {
        char c = cur.peek();
        if (c == 'x' || c == 'X') {
            ++cur.pos;
            factors.push_back(parse_atom(cur));
        } else {
            cur.fail("trailing input");
        }
    }
    if (factors.size() == 1) return factors.front();
    GroupExpr e;
    e.kind = GroupExpr::Kind::product;
    e.factors = std::move(factors);
    return e;
}

GroupTable realize_expr(const GroupExpr& e, int order_cap) {
    auto check = [&](long long order) {
        if (order > order_cap)
            throw cap_error("group order " + std::to_string(order) + " exceeds cap " +
                            std::to_string(order_cap));
    };
    switch (e.kind) {
        case GroupExpr::Kind::cyclic:
            check(e.a);
            return make_cyclic(static_cast<int>(e.a));
        case GroupExpr::Kind::dihedral:
            check(e.a);
            return make_dihedral(static_cast<int>(e.a));
        case GroupExpr::Kind::symmetric: {
            long long f = 1;
            for (long long i = 2; i <= e.a; ++i) f *= i;
            check(f);
            return make_symmetric(static_cast<int>(e.a));
        }
        case GroupExpr::Kind::alternating: {
            long long f = 1;
            for (long long i = 2; i <= e.a; ++i) f *= i;
            check(std::max<long long>(1, f / 2));
            return make_alternating(static_cast<int>(e.a));
        }
        case GroupExpr::Kind::zm: {
            ZMParams p = validate_zm(e.a, e.b, e.c);
            return build_zm(p, order_cap);
        }
        case GroupExpr::Kind::perm: {
            std::vector<std::vector<int>> gens;
            for (const auto& cyc : e.cycles) {
                std::vector<int> one(e.degree);
                for (int i = 0; i < e.degree; ++i) one[i] = i;
                for (size_t i = 0; i < cyc.size(); ++i) one[cyc[i]] = cyc[(i + 1) % cyc.size()];
                gens.push_back(std::move(one));
            }
            return from_generators(e.degree, gens, order_cap, e.str());
        }
        case GroupExpr::Kind::product: {
            std::vector<GroupTable> parts;
            long long order = 1;
            for (const auto& f : e.factors) {
                parts.push_back(realize_expr(f, order_cap));
                order *= parts.back().order;
                check(order);
            }
            return direct_product(parts);
        }
    }
    throw usage_error("unreachable expression kind");
}

namespace {

int find_subgroup(const Lattice& lat, const DynBitset& want, const std::string& what) {
    auto it = lat.index_of.find(want);
    if (it == lat.index_of.end())
        throw usage_error(what + " does not resolve to a subgroup of this lattice");
    return it->second;
}

// parity of a one-line permutation
bool is_even_perm(const std::vector<int>& p) {
    int n = static_cast<int>(p.size());
    std::vector<char> seen(n, 0);
    int transpositions = 0;
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (int j = i; !seen[j]; j = p[j]) {
            seen[j] = 1;
            ++len;
        }
        transpositions += len - 1;
    }
    return transpositions % 2 == 0;
}

const GroupExpr* sole_atom(const GroupExpr& e, GroupExpr::Kind k) {
    if (e.kind == k) return &e;
    return nullptr;
}

int parse_int(const std::string& tok, const std::string& what) {
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) {
            return std::isdigit(static_cast<unsigned char>(c));
        }))
        throw usage_error(what + " must be a nonnegative integer, got '" + tok + "'");
    return std::stoi(tok);
}

}  // namespace

int resolve_selector(const std::string& sel, const GroupExpr& e, const GroupTable& g,
                     const Lattice& lat) {
    if (sel.empty()) throw usage_error("empty subgroup selector");

    if (std::all_of(sel.begin(), sel.end(),
                    [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        if (sel.size() > 8) throw usage_error("subgroup index '" + sel + "' is out of range");
        int idx = std::stoi(sel);
        if (idx < 0 || idx >= lat.count())
            throw usage_error("subgroup index " + sel + " outside 0.." +
                              std::to_string(lat.count() - 1));
        return idx;
    }

    if (sel.rfind("class:", 0) == 0) {
        std::string rest = sel.substr(6);
        size_t dot = rest.find('.');
        int cls = parse_int(rest.substr(0, dot), "conjugacy class");
        int rank = dot == std::string::npos ? 0 : parse_int(rest.substr(dot + 1), "class rank");
        if (cls < 0 || cls >= static_cast<int>(lat.classes.size()))
            throw usage_error("conjugacy class " + std::to_string(cls) + " outside 0.." +
                              std::to_string(lat.classes.size() - 1));
        const auto& members = lat.classes[cls];
        if (rank < 0 || rank >= static_cast<int>(members.size()))
            throw usage_error("class " + std::to_string(cls) + " has " +
                              std::to_string(members.size()) + " members, rank " +
                              std::to_string(rank) + " is out of range");
        return members[rank];
    }

    if (sel == "trivial") return lat.trivial_index;
    if (sel == "whole") return lat.whole_index;

    if (sel == "alternating") {
        if (!g.perm_rep)
            throw usage_error("selector 'alternating' needs a group built from permutations");
        DynBitset evens(g.order);
        for (int i = 0; i < g.order; ++i)
            if (is_even_perm((*g.perm_rep)[i])) evens.set(i);
        return find_subgroup(lat, evens, "the even-permutation set");
    }

    if (sel == "x" || sel == "y" || sel == "xy") {
        const GroupExpr* d = sole_atom(e, GroupExpr::Kind::dihedral);
        if (!d) throw usage_error("selector '" + sel + "' applies to dihedral groups only");
        int n = static_cast<int>(d->a) / 2;
        int elem = sel == "x" ? 1 % n : sel == "y" ? n : n + 1 % n;
        return find_subgroup(lat, cyclic_subgroup(g, elem), "<" + sel + ">");
    }

    if (sel == "a" || sel == "b") {
        const GroupExpr* z = sole_atom(e, GroupExpr::Kind::zm);
        if (!z) throw usage_error("selector '" + sel + "' applies to ZM groups only");
        int elem = sel == "a" ? (z->a == 1 ? 0 : 1) : static_cast<int>(z->a % g.order);
        return find_subgroup(lat, cyclic_subgroup(g, elem), "<" + sel + ">");
    }

    if (sel.rfind("gens:", 0) == 0) {
        if (!g.perm_rep)
            throw usage_error("selector 'gens:' needs a group built from permutations");
        int degree = static_cast<int>((*g.perm_rep)[0].size());
        std::string body = sel.substr(5);
        Cursor cur{body};
        DynBitset seed(g.order);
        seed.set(g.identity);
        auto add_cycle = [&](const std::vector<int>& cyc) {
            std::vector<int> one(degree);
            for (int i = 0; i < degree; ++i) one[i] = i;
            for (size_t i = 0; i < cyc.size(); ++i) one[cyc[i]] = cyc[(i + 1) % cyc.size()];
            for (int i = 0; i < g.order; ++i)
                if ((*g.perm_rep)[i] == one) {
                    seed.set(i);
                    return;
                }
            throw usage_error("generated permutation is not an element of this group");
        };
        add_cycle(parse_cycle(cur, degree));
        while (!cur.eof()) {
            cur.expect(',');
            add_cycle(parse_cycle(cur, degree));
        }
        return find_subgroup(lat, closure(g, seed), "the generated subgroup");
    }

    if (sel.rfind("elems:", 0) == 0) {
        DynBitset seed(g.order);
        seed.set(g.identity);
        std::string body = sel.substr(6);
        size_t p = 0;
        while (p < body.size()) {
            size_t comma = body.find(',', p);
            std::string tok = body.substr(p, comma == std::string::npos ? comma : comma - p);
            int idx = parse_int(tok, "element index");
            if (idx < 0 || idx >= g.order)
                throw usage_error("element index " + tok + " outside 0.." +
                                  std::to_string(g.order - 1));
            seed.set(idx);
            p = comma == std::string::npos ? body.size() : comma + 1;
        }
        return find_subgroup(lat, closure(g, seed), "the generated subgroup");
    }

    throw usage_error(
        "unknown subgroup selector '" + sel +
        "'; use an index, class:C.R, trivial, whole, alternating, x, y, xy, a, b, "
        "gens:(cycles), or elems:i,j");
}

}  // namespace subdeg
