#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace slicebed::milp {

inline constexpr double kFeasTol = 1e-6;
inline constexpr double kIntTol = 1e-6;
inline constexpr double kObjTol = 1e-6;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarKind { binary, continuous };
enum class Relation { less_equal, equal, greater_equal };

struct Variable {
    VarKind kind = VarKind::continuous;
    double lower = 0.0;
    double upper = kInf;
    double objective = 0.0;
    std::string name;
};

struct Term {
    int var = 0;
    double coef = 0.0;
};

struct Constraint {
    std::vector<Term> terms;
    Relation relation = Relation::less_equal;
    double rhs = 0.0;
    std::string name;
};

/// Minimisation model over binary and bounded-below continuous variables.
class IlpModel {
public:
    int add_binary(double objective, std::string name = {});
    int add_continuous(double lower, double upper, double objective, std::string name = {});
    int add_constraint(std::vector<Term> terms, Relation relation, double rhs, std::string name = {});

    const std::vector<Variable>& variables() const { return vars_; }
    const std::vector<Constraint>& constraints() const { return rows_; }
    std::size_t variable_count() const { return vars_.size(); }
    std::size_t constraint_count() const { return rows_.size(); }
    std::size_t binary_count() const;

    void set_bounds(int var, double lower, double upper);

    /// Throws std::invalid_argument on non-finite coefficients or dangling references.
    void validate() const;

    double objective_value(const std::vector<double>& values) const;
    /// Largest constraint or bound violation of `values`.
    double max_violation(const std::vector<double>& values) const;

    /// CPLEX LP text format.
    void write_lp(std::ostream& out) const;

private:
    std::vector<Variable> vars_;
    std::vector<Constraint> rows_;
};

enum class SolveStatus { optimal, infeasible, unbounded, time_limit_best_incumbent, time_limit_no_incumbent, numerical_failure };

std::string to_string(SolveStatus status);

struct IlpSolution {
    SolveStatus status = SolveStatus::infeasible;
    std::vector<double> values;
    double objective = 0.0;
    long nodes = 0;
    long lp_iterations = 0;
    double wall_ms = 0.0;

    bool has_solution() const {
        return status == SolveStatus::optimal || status == SolveStatus::time_limit_best_incumbent;
    }
};

/// LP relaxation (binaries relaxed to [0, 1]) by a two-phase bounded-variable primal simplex.
IlpSolution solve_lp_relaxation(const IlpModel& model);

struct BranchAndBoundOptions {
    std::chrono::milliseconds time_limit{std::chrono::milliseconds::max()};
    long node_limit = std::numeric_limits<long>::max();
};

/// Exact LP-based branch and bound over the binary variables.
IlpSolution branch_and_bound(const IlpModel& model, const BranchAndBoundOptions& options = {});

/// Exhaustive scan of every 0/1 assignment; binaries only, at most 22 of them.
IlpSolution enumerate_oracle(const IlpModel& model);

/// Seam for plugging an external MILP back end behind the same contract.
class Solver {
public:
    virtual ~Solver() = default;
    virtual IlpSolution solve(const IlpModel& model, const BranchAndBoundOptions& options) = 0;
    virtual std::string name() const = 0;
};

class BuiltinSolver final : public Solver {
public:
    IlpSolution solve(const IlpModel& model, const BranchAndBoundOptions& options) override {
        return branch_and_bound(model, options);
    }
    std::string name() const override { return "builtin-bnb"; }
};

}  // namespace slicebed::milp
