#include "polcheck/pctl/formula.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <set>

namespace polcheck::pctl {

StateFormula StateFormula::make_true() { return StateFormula{}; }

StateFormula StateFormula::make_atom(std::string name) {
    StateFormula f;
    f.kind = Kind::Atom;
    f.atom = std::move(name);
    return f;
}

StateFormula StateFormula::make_and(StateFormula lhs, StateFormula rhs) {
    StateFormula f;
    f.kind = Kind::And;
    f.operands.push_back(std::move(lhs));
    f.operands.push_back(std::move(rhs));
    return f;
}

StateFormula StateFormula::make_not(StateFormula operand) {
    StateFormula f;
    f.kind = Kind::Not;
    f.operands.push_back(std::move(operand));
    return f;
}

StateFormula StateFormula::make_prob(PathFormula path, Quantifier q, std::optional<Comparator> cmp,
                                     std::optional<double> threshold) {
    StateFormula f;
    f.kind = Kind::Prob;
    f.quantifier = q;
    f.comparator = cmp;
    f.threshold = cmp ? threshold : std::nullopt;
    f.path = Box<PathFormula>(std::move(path));
    return f;
}

PathFormula PathFormula::next(StateFormula operand) {
    PathFormula p;
    p.kind = Kind::Next;
    p.operands.push_back(std::move(operand));
    return p;
}

PathFormula PathFormula::until(StateFormula lhs, StateFormula rhs) {
    PathFormula p;
    p.kind = Kind::Until;
    p.operands.push_back(std::move(lhs));
    p.operands.push_back(std::move(rhs));
    return p;
}

PathFormula PathFormula::bounded_until(StateFormula lhs, StateFormula rhs, std::uint64_t bound, StepBound kind) {
    PathFormula p = until(std::move(lhs), std::move(rhs));
    p.kind = Kind::BoundedUntil;
    p.bound = bound;
    p.bound_kind = kind;
    return p;
}

PathFormula PathFormula::eventually(StateFormula target) { return until(StateFormula::make_true(), std::move(target)); }

PathFormula PathFormula::bounded_eventually(StateFormula target, std::uint64_t bound) {
    return bounded_until(StateFormula::make_true(), std::move(target), bound);
}

namespace {

std::string format_threshold(double p) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), p);
    return std::string(buf.data(), ptr);
}

const char* comparator_spelling(Comparator c) {
    switch (c) {
        case Comparator::Less: return "<";
        case Comparator::Greater: return ">";
        case Comparator::LessEqual: return "<=";
        case Comparator::GreaterEqual: return ">=";
    }
    return "?";
}

void print_state(const StateFormula& f, std::string& out);
void print_path(const PathFormula& f, std::string& out);

void print_wrapped(const StateFormula& f, bool wrap, std::string& out) {
    if (wrap) out += '(';
    print_state(f, out);
    if (wrap) out += ')';
}

void print_state(const StateFormula& f, std::string& out) {
    using K = StateFormula::Kind;
    switch (f.kind) {
        case K::True:
            out += "true";
            break;
        case K::Atom:
            out += '"';
            out += f.atom;
            out += '"';
            break;
        case K::And: {
            const auto& l = f.operands[0];
            const auto& r = f.operands[1];
            print_wrapped(l, l.kind == K::Prob, out);
            out += " & ";
            print_wrapped(r, r.kind == K::Prob || r.kind == K::And, out);
            break;
        }
        case K::Not:
            out += '!';
            print_wrapped(f.operands[0], f.operands[0].kind == K::And, out);
            break;
        case K::Prob:
            out += 'P';
            if (f.quantifier == Quantifier::Max) out += "max";
            if (f.quantifier == Quantifier::Min) out += "min";
            if (f.comparator) {
                out += comparator_spelling(*f.comparator);
                out += format_threshold(f.threshold.value_or(0.0));
            } else {
                out += "=?";
            }
            out += " [ ";
            print_path(**f.path, out);
            out += " ]";
            break;
    }
}

void print_bound(const PathFormula& f, std::string& out) {
    if (f.kind != PathFormula::Kind::BoundedUntil) return;
    out += f.bound_kind == StepBound::Less ? "<" : "<=";
    out += std::to_string(f.bound);
}

void print_path(const PathFormula& f, std::string& out) {
    if (f.kind == PathFormula::Kind::Next) {
        out += "X ";
        print_state(f.operands[0], out);
        return;
    }
    const auto& lhs = f.operands[0];
    if (lhs.kind == StateFormula::Kind::True) {
        out += 'F';
        print_bound(f, out);
        out += ' ';
    } else {
        print_state(lhs, out);
        out += " U";
        print_bound(f, out);
        out += ' ';
    }
    print_state(f.operands[1], out);
}

void collect_atoms(const StateFormula& f, std::set<std::string>& out) {
    if (f.kind == StateFormula::Kind::Atom) out.insert(f.atom);
    for (const auto& o : f.operands) collect_atoms(o, out);
    if (f.path) {
        for (const auto& o : (*f.path)->operands) collect_atoms(o, out);
    }
}

}  // namespace

std::string pretty_print(const StateFormula& f) {
    std::string out;
    print_state(f, out);
    return out;
}

std::string pretty_print(const PathFormula& f) {
    std::string out;
    print_path(f, out);
    return out;
}

std::vector<std::string> atoms_of(const StateFormula& f) {
    std::set<std::string> atoms;
    collect_atoms(f, atoms);
    return {atoms.begin(), atoms.end()};
}

StateFormula with_outer_quantifier(const StateFormula& f, Quantifier q) {
    StateFormula copy = f;
    if (copy.kind == StateFormula::Kind::Prob) copy.quantifier = q;
    return copy;
}

}  // namespace polcheck::pctl
