#include "qkr/family.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace qkr {

namespace {

FamilySlot Z(int k, int s) { return {Kind::zero, k, s}; }
FamilySlot R(int k) { return {Kind::real, k, 0}; }
FamilySlot I(int k, int s) { return {Kind::imag, k, s}; }
FamilySlot Q(int k) { return {Kind::quad, k, 0}; }

int slot_params(const FamilySlot& s) {
    switch (s.kind) {
        case Kind::zero: return 0;
        case Kind::real:
        case Kind::imag: return 1;
        case Kind::quad: return 2;
    }
    return 0;
}

std::vector<FamilyRow> build_table() {
    const std::vector<std::pair<std::string, std::vector<FamilySlot>>> rows = {
        {"I_1", {Z(6, 1)}},
        {"II_1", {Z(4, 1), I(0, -1)}},
        {"II_2", {Z(4, -1), R(0)}},
        {"II_3", {R(2), Z(0, -1)}},
        {"II_4", {I(2, 1), Z(0, 1)}},
        {"II_5", {I(1, -1), Z(2, 1)}},
        {"II_6", {R(1), Z(2, 1)}},
        {"II_7", {I(1, 1), Z(2, 1)}},
        {"III_1", {Q(0), Z(2, 1)}},
        {"III_2", {Z(2, -1), R(0), I(0, -1)}},
        {"III_3", {I(0, 1), Z(2, 1), I(0, -1)}},
        {"III_4", {Z(2, 1), R(0), R(0)}},
        {"III_5", {I(1, -1), R(0), Z(0, -1)}},
        {"III_6", {R(1), R(0), Z(0, -1)}},
        {"III_7", {I(1, 1), R(0), Z(0, -1)}},
        {"III_8", {I(1, -1), Z(0, 1), I(0, -1)}},
        {"III_9", {R(1), Z(0, 1), I(0, -1)}},
        {"III_10", {I(1, 1), Z(0, 1), I(0, -1)}},
        {"IV_1", {Q(0), R(0), Z(0, -1)}},
        {"IV_2", {Q(0), Z(0, 1), I(0, -1)}},
        {"IV_3", {I(0, 1), R(0), I(0, -1), Z(0, -1)}},
        {"IV_4", {I(0, 1), Z(0, 1), I(0, -1), I(0, -1)}},
        {"IV_5", {R(0), R(0), R(0), Z(0, -1)}},
        {"IV_6", {R(0), R(0), Z(0, 1), I(0, -1)}},
    };
    std::vector<FamilyRow> out;
    for (const auto& [name, slots] : rows) {
        FamilyRow r{name, 0, 0, slots};
        for (const auto& s : slots) {
            r.height = std::max(r.height, s.height);
            r.nparams += slot_params(s);
        }
        out.push_back(r);
    }
    return out;
}

bool same_slot(const FamilySlot& a, const FamilySlot& b) {
    return a.kind == b.kind && a.height == b.height && a.sign == b.sign;
}

struct Realization {
    std::vector<int> consumed;
    std::vector<double> p;
    std::vector<ExactReal> pe;  // meaningful only when exact
    bool exact = true;
    int aliases = 0;
};

class Matcher {
public:
    Matcher(const TypeSum& ts, double tol) : s_(ts.summands), used_(ts.summands.size(), false), tol_(tol) {}

    // Best realization of all slots consuming every summand; aliases minimal.
    std::optional<Realization> best(const std::vector<FamilySlot>& slots) {
        best_.reset();
        Realization acc;
        recurse(slots, 0, acc);
        return best_;
    }

private:
    const std::vector<IndecomposableType>& s_;
    std::vector<bool> used_;
    double tol_;
    std::optional<Realization> best_;

    bool close(double x, double y) const { return std::abs(x - y) <= tol_ * std::max(1.0, std::abs(x)); }

    int first_unused(Kind k, int h, int sign, int skip = -1) const {
        for (size_t i = 0; i < s_.size(); ++i)
            if (!used_[i] && static_cast<int>(i) != skip && s_[i].kind == k && s_[i].height == h && s_[i].sign == sign)
                return static_cast<int>(i);
        return -1;
    }

    static ExactReal zero_exact() { return ExactReal(0); }

    std::vector<Realization> realize(const FamilySlot& slot) {
        std::vector<Realization> out;
        const int k = slot.height;
        switch (slot.kind) {
            case Kind::zero: {
                const int i = first_unused(Kind::zero, k, slot.sign);
                if (i >= 0) out.push_back({{i}, {}, {}, true, 0});
                break;
            }
            case Kind::real:
            case Kind::imag: {
                std::vector<std::string> seen;
                for (size_t i = 0; i < s_.size(); ++i) {
                    const auto& t = s_[i];
                    if (used_[i] || t.kind != slot.kind || t.height != k || t.sign != slot.sign) continue;
                    const std::string str = t.str();
                    if (std::find(seen.begin(), seen.end(), str) != seen.end()) continue;
                    seen.push_back(str);
                    Realization r;
                    r.consumed = {static_cast<int>(i)};
                    r.p = t.parameters();
                    const auto ex = t.exact_parameters();
                    r.exact = t.is_exact();
                    if (r.exact) r.pe = ex;
                    out.push_back(r);
                }
                if (k % 2 == 0) {
                    // parameter 0: D_k(0,0) = D_k+(0) + D_k-(0), D_k(+-)(0,0) = 2 D_k(+-)(0)
                    const int s1 = slot.kind == Kind::real ? 1 : slot.sign;
                    const int s2 = slot.kind == Kind::real ? -1 : slot.sign;
                    const int i = first_unused(Kind::zero, k, s1);
                    const int j = i >= 0 ? first_unused(Kind::zero, k, s2, i) : -1;
                    if (i >= 0 && j >= 0) out.push_back({{i, j}, {0.0}, {zero_exact()}, true, 1});
                }
                break;
            }
            case Kind::quad: {
                for (size_t i = 0; i < s_.size(); ++i) {
                    const auto& t = s_[i];
                    if (used_[i] || t.kind != Kind::quad || t.height != k) continue;
                    Realization r;
                    r.consumed = {static_cast<int>(i)};
                    r.p = t.parameters();
                    r.exact = t.is_exact();
                    if (r.exact) r.pe = t.exact_parameters();
                    out.push_back(r);
                }
                // b = 0: two equal real pairs; a = 0: imaginary pairs of both signs
                const std::pair<FamilySlot, FamilySlot> halves[2] = {{R(k), R(k)}, {I(k, 1), I(k, -1)}};
                for (int h = 0; h < 2; ++h) {
                    for (const auto& r1 : realize(halves[h].first)) {
                        for (int c : r1.consumed) used_[c] = true;
                        for (const auto& r2 : realize(halves[h].second)) {
                            if (!close(r1.p[0], r2.p[0])) continue;
                            Realization r;
                            r.consumed = r1.consumed;
                            r.consumed.insert(r.consumed.end(), r2.consumed.begin(), r2.consumed.end());
                            r.exact = r1.exact && r2.exact;
                            r.aliases = r1.aliases + r2.aliases + 1;
                            if (h == 0) {
                                r.p = {r1.p[0], 0.0};
                                if (r.exact) r.pe = {r1.pe[0], zero_exact()};
                            } else {
                                r.p = {0.0, r1.p[0]};
                                if (r.exact) r.pe = {zero_exact(), r1.pe[0]};
                            }
                            out.push_back(r);
                        }
                        for (int c : r1.consumed) used_[c] = false;
                    }
                }
                break;
            }
        }
        return out;
    }

    void recurse(const std::vector<FamilySlot>& slots, size_t idx, Realization& acc) {
        if (best_ && acc.aliases >= best_->aliases) return;
        if (idx == slots.size()) {
            if (std::all_of(used_.begin(), used_.end(), [](bool b) { return b; })) best_ = acc;
            return;
        }
        for (const auto& r : realize(slots[idx])) {
            for (int c : r.consumed) used_[c] = true;
            Realization next = acc;
            next.consumed.insert(next.consumed.end(), r.consumed.begin(), r.consumed.end());
            next.p.insert(next.p.end(), r.p.begin(), r.p.end());
            next.exact = acc.exact && r.exact;
            if (next.exact) next.pe.insert(next.pe.end(), r.pe.begin(), r.pe.end());
            next.aliases += r.aliases;
            recurse(slots, idx + 1, next);
            for (int c : r.consumed) used_[c] = false;
        }
    }
};

// Sorts parameter tuples among interchangeable slots so the label is canonical.
void canonicalize_params(const FamilyRow& row, std::vector<double>& p, std::optional<std::vector<ExactReal>>& pe) {
    std::vector<int> offset;
    int off = 0;
    for (const auto& s : row.slots) {
        offset.push_back(off);
        off += slot_params(s);
    }
    for (size_t i = 0; i < row.slots.size(); ++i) {
        std::vector<size_t> group;
        bool first = true;
        for (size_t j = 0; j < row.slots.size(); ++j) {
            if (!same_slot(row.slots[i], row.slots[j])) continue;
            if (j < i) first = false;
            group.push_back(j);
        }
        const int w = slot_params(row.slots[i]);
        if (!first || group.size() < 2 || w == 0) continue;
        std::vector<size_t> order(group.size());
        for (size_t g = 0; g < group.size(); ++g) order[g] = g;
        auto tuple = [&](size_t g) {
            return std::vector<double>(p.begin() + offset[group[g]], p.begin() + offset[group[g]] + w);
        };
        std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) { return tuple(x) < tuple(y); });
        std::vector<double> np = p;
        std::optional<std::vector<ExactReal>> npe = pe;
        for (size_t g = 0; g < group.size(); ++g)
            for (int q = 0; q < w; ++q) {
                np[offset[group[g]] + q] = p[offset[group[order[g]]] + q];
                if (pe) (*npe)[offset[group[g]] + q] = (*pe)[offset[group[order[g]]] + q];
            }
        p = np;
        pe = npe;
    }
}

}  // namespace

std::string FamilyRow::display() const {
    std::string out;
    int z = 0;
    const bool many = nparams > 1;
    for (const auto& s : slots) {
        if (!out.empty()) out += " + ";
        out += "D" + std::to_string(s.height);
        if (s.sign > 0) out += "+";
        if (s.sign < 0) out += "-";
        const std::string n = s.kind == Kind::zero ? "" : (many ? "z" + std::to_string(++z) : "z");
        switch (s.kind) {
            case Kind::zero: out += "(0)"; break;
            case Kind::real:
            case Kind::imag: out += "(" + n + ",-" + n + ")"; break;
            case Kind::quad: out += "(" + n + ",-" + n + "," + n + "*,-" + n + "*)"; break;
        }
    }
    return out;
}

const std::vector<FamilyRow>& family_table() {
    static const std::vector<FamilyRow> table = build_table();
    return table;
}

const FamilyRow& family_row(const std::string& name) {
    for (const auto& r : family_table())
        if (r.name == name) return r;
    throw std::invalid_argument("unknown family '" + name + "'");
}

ClassificationIncomplete::ClassificationIncomplete(const TypeSum& t)
    : std::runtime_error("type sum " + t.str() + " matches no family"), types(t) {}

FamilyLabel family_label(const TypeSum& ts, double rel_tol) {
    if (ts.dimension() != 7 || ts.signature() != std::pair<int, int>{3, 4}) throw ClassificationIncomplete(ts);
    TypeSum sorted = ts;
    sorted.sort();
    std::optional<FamilyLabel> best;
    int best_aliases = 0;
    std::vector<std::string> matched;
    for (const auto& row : family_table()) {
        Matcher m(sorted, rel_tol);
        const auto r = m.best(row.slots);
        if (!r) continue;
        matched.push_back(row.name);
        if (best && r->aliases >= best_aliases) continue;
        FamilyLabel fl;
        fl.name = row.name;
        fl.params = r->p;
        if (r->exact) fl.exact_params = r->pe;
        canonicalize_params(row, fl.params, fl.exact_params);
        best = fl;
        best_aliases = r->aliases;
    }
    if (!best) throw ClassificationIncomplete(ts);
    for (const auto& n : matched)
        if (n != best->name) best->aliases.push_back(n);
    return *best;
}

TypeSum family_type_sum(const FamilyLabel& fl) {
    const FamilyRow& row = family_row(fl.name);
    if (static_cast<int>(fl.params.size()) != row.nparams)
        throw std::domain_error(fl.name + " takes " + std::to_string(row.nparams) + " parameters");
    if (fl.exact_params && fl.exact_params->size() != fl.params.size())
        throw std::domain_error("exact parameters do not match the numeric ones");
    TypeSum out;
    size_t i = 0;
    for (const auto& s : row.slots) {
        IndecomposableType t;
        t.kind = s.kind;
        t.height = s.height;
        t.sign = s.sign;
        auto exact = [&](size_t j) -> std::optional<ExactReal> {
            if (!fl.exact_params) return std::nullopt;
            const ExactReal& e = (*fl.exact_params)[j];
            return e.sign() < 0 ? -e : e;
        };
        switch (s.kind) {
            case Kind::zero: break;
            case Kind::real:
                t.zeta = {std::abs(fl.params[i]), 0.0};
                t.exact_re = exact(i);
                ++i;
                break;
            case Kind::imag:
                t.zeta = {0.0, std::abs(fl.params[i])};
                t.exact_im = exact(i);
                ++i;
                break;
            case Kind::quad:
                t.zeta = {std::abs(fl.params[i]), std::abs(fl.params[i + 1])};
                t.exact_re = exact(i);
                t.exact_im = exact(i + 1);
                i += 2;
                break;
        }
        if (s.kind == Kind::imag && s.height % 2 == 1 && t.zeta.imag() == 0.0)
            throw std::domain_error(fl.name + ": odd-height imaginary slot needs a nonzero parameter");
        append_expanded(out, t);
    }
    out.sort();
    return out;
}

}  // namespace qkr
