#include "slicebed/milp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

namespace slicebed::milp {

int IlpModel::add_binary(double objective, std::string name) {
    vars_.push_back({VarKind::binary, 0.0, 1.0, objective, std::move(name)});
    return static_cast<int>(vars_.size()) - 1;
}

int IlpModel::add_continuous(double lower, double upper, double objective, std::string name) {
    vars_.push_back({VarKind::continuous, lower, upper, objective, std::move(name)});
    return static_cast<int>(vars_.size()) - 1;
}

int IlpModel::add_constraint(std::vector<Term> terms, Relation relation, double rhs, std::string name) {
    rows_.push_back({std::move(terms), relation, rhs, std::move(name)});
    return static_cast<int>(rows_.size()) - 1;
}

std::size_t IlpModel::binary_count() const {
    return static_cast<std::size_t>(
        std::count_if(vars_.begin(), vars_.end(), [](const Variable& v) { return v.kind == VarKind::binary; }));
}

void IlpModel::set_bounds(int var, double lower, double upper) {
    auto& v = vars_.at(static_cast<std::size_t>(var));
    v.lower = lower;
    v.upper = upper;
}

void IlpModel::validate() const {
    for (std::size_t j = 0; j < vars_.size(); ++j) {
        const Variable& v = vars_[j];
        if (!std::isfinite(v.objective)) throw std::invalid_argument("variable " + std::to_string(j) + ": objective not finite");
        if (!std::isfinite(v.lower)) throw std::invalid_argument("variable " + std::to_string(j) + ": lower bound must be finite");
        if (std::isnan(v.upper)) throw std::invalid_argument("variable " + std::to_string(j) + ": upper bound is NaN");
        if (v.kind == VarKind::binary && (v.lower < 0.0 || v.upper > 1.0))
            throw std::invalid_argument("variable " + std::to_string(j) + ": binary bounds outside [0, 1]");
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Constraint& c = rows_[i];
        if (!std::isfinite(c.rhs)) throw std::invalid_argument("constraint " + std::to_string(i) + ": rhs not finite");
        for (const Term& t : c.terms) {
            if (t.var < 0 || static_cast<std::size_t>(t.var) >= vars_.size())
                throw std::invalid_argument("constraint " + std::to_string(i) + ": unknown variable");
            if (!std::isfinite(t.coef)) throw std::invalid_argument("constraint " + std::to_string(i) + ": coefficient not finite");
        }
    }
}

double IlpModel::objective_value(const std::vector<double>& values) const {
    double obj = 0.0;
    for (std::size_t j = 0; j < vars_.size(); ++j) obj += vars_[j].objective * values[j];
    return obj;
}

double IlpModel::max_violation(const std::vector<double>& values) const {
    double worst = 0.0;
    for (std::size_t j = 0; j < vars_.size(); ++j) {
        worst = std::max(worst, vars_[j].lower - values[j]);
        worst = std::max(worst, values[j] - vars_[j].upper);
    }
    for (const Constraint& c : rows_) {
        double act = 0.0;
        for (const Term& t : c.terms) act += t.coef * values[static_cast<std::size_t>(t.var)];
        const double scale = 1.0 + std::abs(c.rhs);
        double v = 0.0;
        if (c.relation == Relation::less_equal) v = act - c.rhs;
        else if (c.relation == Relation::greater_equal) v = c.rhs - act;
        else v = std::abs(act - c.rhs);
        worst = std::max(worst, v / scale);
    }
    return worst;
}

namespace {

std::string lp_name(const std::string& name, char prefix, std::size_t index) {
    if (name.empty()) return std::string(1, prefix) + std::to_string(index);
    std::string out = name;
    for (char& ch : out)
        if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.')) ch = '_';
    return out;
}

void write_terms(std::ostream& out, const std::vector<std::pair<double, std::string>>& terms) {
    if (terms.empty()) {
        out << " 0";
        return;
    }
    bool first = true;
    for (const auto& [coef, name] : terms) {
        if (coef < 0) out << " - " << -coef << ' ' << name;
        else if (first) out << ' ' << coef << ' ' << name;
        else out << " + " << coef << ' ' << name;
        first = false;
    }
}

}  // namespace

void IlpModel::write_lp(std::ostream& out) const {
    std::vector<std::string> names;
    names.reserve(vars_.size());
    for (std::size_t j = 0; j < vars_.size(); ++j) names.push_back(lp_name(vars_[j].name, 'x', j));

    out << "Minimize\n obj:";
    std::vector<std::pair<double, std::string>> obj;
    for (std::size_t j = 0; j < vars_.size(); ++j)
        if (vars_[j].objective != 0.0) obj.emplace_back(vars_[j].objective, names[j]);
    write_terms(out, obj);
    out << "\nSubject To\n";
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Constraint& c = rows_[i];
        out << ' ' << lp_name(c.name, 'c', i) << ':';
        std::vector<std::pair<double, std::string>> terms;
        for (const Term& t : c.terms) terms.emplace_back(t.coef, names[static_cast<std::size_t>(t.var)]);
        write_terms(out, terms);
        out << (c.relation == Relation::less_equal ? " <= " : c.relation == Relation::equal ? " = " : " >= ") << c.rhs
            << '\n';
    }
    out << "Bounds\n";
    for (std::size_t j = 0; j < vars_.size(); ++j) {
        if (vars_[j].kind == VarKind::binary) continue;
        out << ' ' << vars_[j].lower << " <= " << names[j] << " <= ";
        if (std::isinf(vars_[j].upper)) out << "+inf\n";
        else out << vars_[j].upper << '\n';
    }
    out << "Binaries\n";
    for (std::size_t j = 0; j < vars_.size(); ++j)
        if (vars_[j].kind == VarKind::binary) out << ' ' << names[j] << '\n';
    out << "End\n";
}

std::string to_string(SolveStatus status) {
    switch (status) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::unbounded: return "unbounded";
    case SolveStatus::time_limit_best_incumbent: return "time_limit_best_incumbent";
    case SolveStatus::time_limit_no_incumbent: return "time_limit_no_incumbent";
    case SolveStatus::numerical_failure: return "numerical_failure";
    }
    return "unknown";
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr long kDegenerateBlandThreshold = 1000;

struct LpOutcome {
    SolveStatus status = SolveStatus::numerical_failure;
    std::vector<double> x;
    double objective = 0.0;
    long iterations = 0;
};

// Dense-tableau bounded-variable simplex. Structural variables are shifted to
// lower bound zero; nonbasic variables sit at 0 or at their upper bound.
class BoundedSimplex {
public:
    BoundedSimplex(const IlpModel& model, const std::vector<double>& lower, const std::vector<double>& upper)
        : model_(model), lower_(lower) {
        const auto& rows = model.constraints();
        m_ = rows.size();
        n_ = model.variable_count();

        std::size_t slacks = 0;
        for (const auto& c : rows)
            if (c.relation != Relation::equal) ++slacks;
        s_ = slacks;
        // artificials are allocated lazily: one column per row at most
        ncols_ = n_ + s_ + m_;
        tab_.assign(m_ * ncols_, 0.0);
        beta_.assign(m_, 0.0);
        ub_.assign(ncols_, kInf);
        cost_.assign(ncols_, 0.0);
        at_upper_.assign(ncols_, 0);
        basis_.assign(m_, -1);
        pos_.assign(ncols_, -1);
        artificial_.assign(ncols_, 0);

        for (std::size_t j = 0; j < n_; ++j) {
            ub_[j] = upper[j] - lower[j];
            cost_[j] = model.variables()[j].objective;
        }

        std::size_t slack_col = n_;
        for (std::size_t i = 0; i < m_; ++i) {
            const Constraint& c = rows[i];
            double rhs = c.rhs;
            for (const Term& t : c.terms) {
                at(i, static_cast<std::size_t>(t.var)) += t.coef;
                rhs -= t.coef * lower[static_cast<std::size_t>(t.var)];
            }
            long slack = -1;
            if (c.relation != Relation::equal) {
                slack = static_cast<long>(slack_col++);
                at(i, static_cast<std::size_t>(slack)) = c.relation == Relation::less_equal ? 1.0 : -1.0;
            }
            if (rhs < 0.0) {
                for (std::size_t j = 0; j < n_ + s_; ++j) at(i, j) = -at(i, j);
                rhs = -rhs;
            }
            beta_[i] = rhs;
            if (slack >= 0 && at(i, static_cast<std::size_t>(slack)) > 0.0) {
                set_basic(i, static_cast<std::size_t>(slack));
            } else {
                const std::size_t a = n_ + s_ + i;
                at(i, a) = 1.0;
                artificial_[a] = 1;
                ub_[a] = kInf;
                set_basic(i, a);
            }
        }
        // unused artificial columns are dead
        for (std::size_t i = 0; i < m_; ++i) {
            const std::size_t a = n_ + s_ + i;
            if (!artificial_[a]) ub_[a] = 0.0;
        }
    }

    LpOutcome solve(long iteration_limit) {
        LpOutcome out;
        for (std::size_t j = 0; j < n_; ++j) {
            if (ub_[j] < -kFeasTol) {
                out.status = SolveStatus::infeasible;
                return out;
            }
            if (ub_[j] < 0.0) ub_[j] = 0.0;
        }

        bool need_phase1 = false;
        for (std::size_t i = 0; i < m_; ++i)
            if (artificial_[static_cast<std::size_t>(basis_[i])]) need_phase1 = true;

        if (need_phase1) {
            std::vector<double> c1(ncols_, 0.0);
            for (std::size_t j = 0; j < ncols_; ++j)
                if (artificial_[j]) c1[j] = 1.0;
            price(c1);
            const SolveStatus st = iterate(true, iteration_limit, out.iterations);
            if (st != SolveStatus::optimal) {
                out.status = st == SolveStatus::unbounded ? SolveStatus::numerical_failure : st;
                return out;
            }
            double infeas = 0.0;
            double scale = 1.0;
            for (std::size_t i = 0; i < m_; ++i) {
                if (artificial_[static_cast<std::size_t>(basis_[i])]) infeas += std::max(0.0, beta_[i]);
                scale = std::max(scale, std::abs(model_.constraints()[i].rhs));
            }
            if (infeas > kFeasTol * scale) {
                out.status = SolveStatus::infeasible;
                return out;
            }
            for (std::size_t j = 0; j < ncols_; ++j)
                if (artificial_[j]) ub_[j] = 0.0;
        }

        price(cost_);
        const SolveStatus st = iterate(false, iteration_limit, out.iterations);
        if (st != SolveStatus::optimal) {
            out.status = st;
            return out;
        }

        out.x.assign(n_, 0.0);
        for (std::size_t j = 0; j < n_; ++j) {
            const double shifted = pos_[j] >= 0 ? beta_[static_cast<std::size_t>(pos_[j])] : (at_upper_[j] ? ub_[j] : 0.0);
            out.x[j] = lower_[j] + std::clamp(shifted, 0.0, ub_[j]);
        }
        out.objective = model_.objective_value(out.x);
        out.status = model_.max_violation(out.x) <= kFeasTol * 10 ? SolveStatus::optimal : SolveStatus::numerical_failure;
        return out;
    }

private:
    double& at(std::size_t i, std::size_t j) { return tab_[i * ncols_ + j]; }
    double at(std::size_t i, std::size_t j) const { return tab_[i * ncols_ + j]; }

    void set_basic(std::size_t row, std::size_t col) {
        if (basis_[row] >= 0) pos_[static_cast<std::size_t>(basis_[row])] = -1;
        basis_[row] = static_cast<long>(col);
        pos_[col] = static_cast<long>(row);
    }

    void price(const std::vector<double>& c) {
        d_ = c;
        for (std::size_t i = 0; i < m_; ++i) {
            const double cb = c[static_cast<std::size_t>(basis_[i])];
            if (cb == 0.0) continue;
            const double* row = &tab_[i * ncols_];
            for (std::size_t j = 0; j < ncols_; ++j) d_[j] -= cb * row[j];
        }
    }

    bool eligible(std::size_t j, bool phase1) const {
        if (pos_[j] >= 0 || ub_[j] <= 0.0) return false;
        if (!phase1 && artificial_[j]) return false;
        return at_upper_[j] ? d_[j] > kCostTol : d_[j] < -kCostTol;
    }

    SolveStatus iterate(bool phase1, long limit, long& iterations) {
        long degenerate = 0;
        std::vector<std::size_t> nz;
        nz.reserve(ncols_);
        for (;;) {
            if (iterations >= limit) return SolveStatus::numerical_failure;
            const bool bland = degenerate >= kDegenerateBlandThreshold;

            long enter = -1;
            double best = 0.0;
            for (std::size_t j = 0; j < ncols_; ++j) {
                if (!eligible(j, phase1)) continue;
                if (bland) {
                    enter = static_cast<long>(j);
                    break;
                }
                if (std::abs(d_[j]) > best) {
                    best = std::abs(d_[j]);
                    enter = static_cast<long>(j);
                }
            }
            if (enter < 0) return SolveStatus::optimal;
            const auto q = static_cast<std::size_t>(enter);
            const double dir = at_upper_[q] ? -1.0 : 1.0;

            double step = ub_[q];
            long leave = -1;
            bool leave_to_upper = false;
            double leave_alpha = 0.0;
            for (std::size_t i = 0; i < m_; ++i) {
                const double alpha = dir * at(i, q);
                const auto b = static_cast<std::size_t>(basis_[i]);
                double limit_i = kInf;
                bool to_upper = false;
                if (alpha > kPivotTol) {
                    limit_i = std::max(0.0, beta_[i]) / alpha;
                } else if (alpha < -kPivotTol && std::isfinite(ub_[b])) {
                    limit_i = std::max(0.0, ub_[b] - beta_[i]) / -alpha;
                    to_upper = true;
                } else {
                    continue;
                }
                bool take = false;
                if (limit_i < step - 1e-12) take = true;
                else if (limit_i <= step + 1e-12 && leave >= 0) {
                    if (bland) take = b < static_cast<std::size_t>(basis_[static_cast<std::size_t>(leave)]);
                    else take = std::abs(alpha) > std::abs(leave_alpha);
                }
                if (take) {
                    step = limit_i;
                    leave = static_cast<long>(i);
                    leave_to_upper = to_upper;
                    leave_alpha = alpha;
                }
            }
            if (leave < 0 && std::isinf(step)) return SolveStatus::unbounded;
            ++iterations;
            degenerate = step < 1e-12 ? degenerate + 1 : 0;

            if (step > 0.0)
                for (std::size_t i = 0; i < m_; ++i) beta_[i] -= dir * at(i, q) * step;

            if (leave < 0) {
                at_upper_[q] = !at_upper_[q];
                continue;
            }

            const auto r = static_cast<std::size_t>(leave);
            const auto out_col = static_cast<std::size_t>(basis_[r]);
            const double entering_value = (at_upper_[q] ? ub_[q] : 0.0) + dir * step;
            at_upper_[out_col] = leave_to_upper ? 1 : 0;
            if (artificial_[out_col]) ub_[out_col] = 0.0;
            at_upper_[q] = 0;

            double* prow = &tab_[r * ncols_];
            const double piv = prow[q];
            nz.clear();
            for (std::size_t j = 0; j < ncols_; ++j) {
                if (prow[j] != 0.0) {
                    prow[j] /= piv;
                    nz.push_back(j);
                }
            }
            prow[q] = 1.0;
            for (std::size_t i = 0; i < m_; ++i) {
                if (i == r) continue;
                double* row = &tab_[i * ncols_];
                const double f = row[q];
                if (f == 0.0) continue;
                for (std::size_t j : nz) row[j] -= f * prow[j];
                row[q] = 0.0;
            }
            const double fd = d_[q];
            if (fd != 0.0) {
                for (std::size_t j : nz) d_[j] -= fd * prow[j];
                d_[q] = 0.0;
            }
            beta_[r] = entering_value;
            set_basic(r, q);
        }
    }

    const IlpModel& model_;
    const std::vector<double>& lower_;
    std::size_t m_ = 0, n_ = 0, s_ = 0, ncols_ = 0;
    std::vector<double> tab_;
    std::vector<double> beta_;
    std::vector<double> ub_;
    std::vector<double> cost_;
    std::vector<double> d_;
    std::vector<char> at_upper_;
    std::vector<long> basis_;
    std::vector<long> pos_;
    std::vector<char> artificial_;
};

LpOutcome solve_lp(const IlpModel& model, const std::vector<double>& lower, const std::vector<double>& upper) {
    const long limit = 50 * static_cast<long>(model.variable_count() + 2 * model.constraint_count()) + 10000;
    BoundedSimplex simplex(model, lower, upper);
    return simplex.solve(limit);
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

IlpSolution solve_lp_relaxation(const IlpModel& model) {
    model.validate();
    const auto start = std::chrono::steady_clock::now();
    std::vector<double> lo, hi;
    for (const auto& v : model.variables()) {
        lo.push_back(v.lower);
        hi.push_back(v.upper);
    }
    LpOutcome lp = solve_lp(model, lo, hi);
    IlpSolution sol;
    sol.status = lp.status;
    sol.values = std::move(lp.x);
    sol.objective = lp.objective;
    sol.lp_iterations = lp.iterations;
    sol.nodes = 1;
    sol.wall_ms = elapsed_ms(start);
    return sol;
}

namespace {

struct BbNode {
    std::vector<std::pair<int, double>> fixings;
    double bound = -kInf;
    long seq = 0;
    int depth = 0;
};

}  // namespace

IlpSolution branch_and_bound(const IlpModel& model, const BranchAndBoundOptions& options) {
    model.validate();
    const auto start = std::chrono::steady_clock::now();
    const auto& vars = model.variables();
    std::vector<double> base_lo, base_hi;
    for (const auto& v : vars) {
        base_lo.push_back(v.lower);
        base_hi.push_back(v.upper);
    }

    IlpSolution result;
    bool have_incumbent = false;
    double incumbent_obj = kInf;
    std::vector<double> incumbent;
    bool hit_limit = false;
    bool numerical = false;

    std::vector<BbNode> open;
    open.push_back(BbNode{});
    long seq = 0;
    std::vector<double> lo, hi;

    auto prune_bound = [&](double bound) {
        return have_incumbent && bound >= incumbent_obj - kObjTol * std::max(1.0, std::abs(incumbent_obj));
    };

    while (!open.empty()) {
        if (result.nodes >= options.node_limit ||
            (options.time_limit != std::chrono::milliseconds::max() &&
             elapsed_ms(start) > static_cast<double>(options.time_limit.count()))) {
            hit_limit = true;
            break;
        }

        // Depth-first dive until the first incumbent, best-first afterwards.
        std::size_t pick = open.size() - 1;
        if (have_incumbent) {
            for (std::size_t k = 0; k < open.size(); ++k) {
                const auto& a = open[k];
                const auto& b = open[pick];
                if (a.bound < b.bound || (a.bound == b.bound && a.seq < b.seq)) pick = k;
            }
        }
        BbNode node = std::move(open[pick]);
        open.erase(open.begin() + static_cast<long>(pick));
        if (prune_bound(node.bound)) continue;

        lo = base_lo;
        hi = base_hi;
        for (const auto& [var, value] : node.fixings) {
            lo[static_cast<std::size_t>(var)] = value;
            hi[static_cast<std::size_t>(var)] = value;
        }
        LpOutcome lp = solve_lp(model, lo, hi);
        ++result.nodes;
        result.lp_iterations += lp.iterations;

        if (lp.status == SolveStatus::infeasible) continue;
        if (lp.status == SolveStatus::unbounded) {
            if (node.fixings.empty()) {
                result.status = SolveStatus::unbounded;
                result.wall_ms = elapsed_ms(start);
                return result;
            }
            continue;
        }
        if (lp.status != SolveStatus::optimal) {
            numerical = true;
            continue;
        }
        if (prune_bound(lp.objective)) continue;

        int branch_var = -1;
        double best_frac = -1.0;
        for (std::size_t j = 0; j < vars.size(); ++j) {
            if (vars[j].kind != VarKind::binary) continue;
            const double x = lp.x[j];
            const double frac = std::abs(x - std::round(x));
            if (frac <= kIntTol) continue;
            const double score = 0.5 - std::abs(x - std::floor(x) - 0.5);
            if (score > best_frac) {
                best_frac = score;
                branch_var = static_cast<int>(j);
            }
        }

        if (branch_var < 0) {
            std::vector<double> x = lp.x;
            for (std::size_t j = 0; j < vars.size(); ++j)
                if (vars[j].kind == VarKind::binary) x[j] = std::round(x[j]);
            if (model.max_violation(x) > kFeasTol * 10) {
                numerical = true;
                continue;
            }
            const double obj = model.objective_value(x);
            if (!have_incumbent || obj < incumbent_obj) {
                have_incumbent = true;
                incumbent_obj = obj;
                incumbent = std::move(x);
            }
            continue;
        }

        const double x = lp.x[static_cast<std::size_t>(branch_var)];
        const double first = x >= 0.5 ? 0.0 : 1.0; // pushed first, explored second while diving
        for (double value : {first, 1.0 - first}) {
            BbNode child;
            child.fixings = node.fixings;
            child.fixings.emplace_back(branch_var, value);
            child.bound = lp.objective;
            child.seq = ++seq;
            child.depth = node.depth + 1;
            open.push_back(std::move(child));
        }
    }

    result.wall_ms = elapsed_ms(start);
    if (have_incumbent) {
        result.values = std::move(incumbent);
        result.objective = incumbent_obj;
        result.status = hit_limit ? SolveStatus::time_limit_best_incumbent : SolveStatus::optimal;
    } else if (hit_limit) {
        result.status = SolveStatus::time_limit_no_incumbent;
    } else {
        result.status = numerical ? SolveStatus::numerical_failure : SolveStatus::infeasible;
    }
    return result;
}

IlpSolution enumerate_oracle(const IlpModel& model) {
    model.validate();
    const auto start = std::chrono::steady_clock::now();
    const auto& vars = model.variables();
    const auto& rows = model.constraints();
    const std::size_t n = vars.size();
    if (n > 22) throw std::invalid_argument("enumerate_oracle: at most 22 binary variables");
    for (const auto& v : vars)
        if (v.kind != VarKind::binary) throw std::invalid_argument("enumerate_oracle: continuous variables not supported");

    const std::size_t m = rows.size();
    std::vector<double> columns(n * m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (const Term& t : rows[i].terms) columns[static_cast<std::size_t>(t.var) * m + i] += t.coef;

    auto feasible = [&](const std::vector<double>& act, const std::vector<char>& x) {
        for (std::size_t j = 0; j < n; ++j)
            if (x[j] < vars[j].lower - kFeasTol || x[j] > vars[j].upper + kFeasTol) return false;
        for (std::size_t i = 0; i < m; ++i) {
            const double slack = kFeasTol * (1.0 + std::abs(rows[i].rhs));
            switch (rows[i].relation) {
            case Relation::less_equal:
                if (act[i] > rows[i].rhs + slack) return false;
                break;
            case Relation::greater_equal:
                if (act[i] < rows[i].rhs - slack) return false;
                break;
            case Relation::equal:
                if (std::abs(act[i] - rows[i].rhs) > slack) return false;
                break;
            }
        }
        return true;
    };

    std::vector<char> x(n, 0);
    std::vector<double> act(m, 0.0);
    double obj = 0.0;
    bool found = false;
    double best = kInf;
    std::vector<char> best_x;

    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t step = 0; step < total; ++step) {
        if (step > 0) {
            // Gray code: flip the lowest set bit of the step counter
            const auto j = static_cast<std::size_t>(__builtin_ctzll(step));
            const double sign = x[j] ? -1.0 : 1.0;
            x[j] ^= 1;
            obj += sign * vars[j].objective;
            const double* col = &columns[j * m];
            for (std::size_t i = 0; i < m; ++i) act[i] += sign * col[i];
        }
        if ((!found || obj < best - 1e-12) && feasible(act, x)) {
            // re-evaluate exactly to shed accumulated drift
            std::vector<double> exact(m, 0.0);
            double exact_obj = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (!x[j]) continue;
                exact_obj += vars[j].objective;
                for (std::size_t i = 0; i < m; ++i) exact[i] += columns[j * m + i];
            }
            if (feasible(exact, x) && (!found || exact_obj < best)) {
                found = true;
                best = exact_obj;
                best_x = x;
            }
        }
    }

    IlpSolution sol;
    sol.nodes = static_cast<long>(total);
    sol.wall_ms = elapsed_ms(start);
    if (!found) {
        sol.status = SolveStatus::infeasible;
        return sol;
    }
    sol.status = SolveStatus::optimal;
    sol.values.assign(best_x.begin(), best_x.end());
    sol.objective = best;
    return sol;
}

}  // namespace slicebed::milp
