#include "advicelab/games.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "advicelab/numeric.hpp"

namespace adv::games {

double CostMatrix::inf_norm() const {
    double m = 0.0;
    for (double e : entries) m = std::max(m, e);
    return m;
}

void CostMatrix::validate() const {
    if (q < 1) throw std::invalid_argument("CostMatrix: dimension must be >= 1");
    if (entries.size() != static_cast<std::size_t>(q) * static_cast<std::size_t>(q))
        throw std::invalid_argument("CostMatrix: not square");
    for (double e : entries)
        if (e < 0.0 || !std::isfinite(e))
            throw std::invalid_argument("CostMatrix: entries must be finite and non-negative");
}

CostMatrix CostMatrix::sgkh(int q) {
    CostMatrix a;
    a.q = q;
    a.entries.assign(static_cast<std::size_t>(q) * q, 1.0);
    for (int i = 0; i < q; ++i) a.entries[static_cast<std::size_t>(i * q + i)] = 0.0;
    return a;
}

CostMatrix CostMatrix::identity(int q) {
    CostMatrix a;
    a.q = q;
    a.entries.assign(static_cast<std::size_t>(q) * q, 0.0);
    for (int i = 0; i < q; ++i) a.entries[static_cast<std::size_t>(i * q + i)] = 1.0;
    return a;
}

CostMatrix CostMatrix::bsg(double s, double t) {
    if (!(s > 0.0 && s <= t)) throw std::invalid_argument("CostMatrix::bsg: requires 0 < s <= t");
    CostMatrix a;
    a.q = 2;
    a.entries = {0.0, s, t, 0.0};
    return a;
}

CostMatrix CostMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    CostMatrix a;
    a.q = static_cast<int>(rows.size());
    for (const auto& row : rows) {
        if (row.size() != rows.size())
            throw std::invalid_argument("CostMatrix::from_rows: ragged rows");
        a.entries.insert(a.entries.end(), row.begin(), row.end());
    }
    a.validate();
    return a;
}

namespace {

// Dense simplex for: maximize sum(x) subject to B x <= 1, x >= 0, with
// B > 0 entrywise. The all-slack basis is feasible. T is double or Rational.
template <typename T>
struct SimplexOutcome {
    T objective{};
    std::vector<T> primal; // x
    std::vector<T> dual;   // y with y B >= 1, sum(y) = objective
};

template <typename T>
bool positive(const T& v, const T& eps) {
    return v > eps;
}

template <typename T>
SimplexOutcome<T> simplex_game(const std::vector<std::vector<T>>& b, const T& eps) {
    const std::size_t m = b.size();    // constraints = rows of B
    const std::size_t n = b.size();    // variables = columns of B (square)
    const std::size_t cols = n + m + 1;

    // tableau[i] = [B_i | I_i | rhs], z = [-c | 0 | 0] with c = 1.
    std::vector<std::vector<T>> tab(m, std::vector<T>(cols, T{}));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) tab[i][j] = b[i][j];
        tab[i][n + i] = T{1};
        tab[i][cols - 1] = T{1};
    }
    std::vector<T> z(cols, T{});
    for (std::size_t j = 0; j < n; ++j) z[j] = T{-1};
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    const std::size_t max_pivots = 4000 + 200 * m * n;
    for (std::size_t pivots = 0;; ++pivots) {
        if (pivots > max_pivots) throw std::runtime_error("simplex: pivot limit exceeded");
        // Bland's rule: smallest index with a negative reduced cost.
        std::size_t enter = cols;
        for (std::size_t j = 0; j + 1 < cols; ++j) {
            if (positive(T{} - z[j], eps)) {
                enter = j;
                break;
            }
        }
        if (enter == cols) break; // optimal

        std::size_t leave = m;
        for (std::size_t i = 0; i < m; ++i) {
            if (!positive(tab[i][enter], eps)) continue;
            if (leave == m) {
                leave = i;
                continue;
            }
            // Smallest ratio; ties by smallest basis index (Bland).
            T lhs = tab[i][cols - 1] * tab[leave][enter];
            T rhs = tab[leave][cols - 1] * tab[i][enter];
            if (lhs < rhs || (lhs == rhs && basis[i] < basis[leave])) leave = i;
        }
        if (leave == m) throw std::runtime_error("simplex: unbounded (matrix not positive?)");

        // Pivot on (leave, enter).
        T piv = tab[leave][enter];
        for (std::size_t j = 0; j < cols; ++j) tab[leave][j] = tab[leave][j] / piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave) continue;
            T f = tab[i][enter];
            if (f == T{}) continue;
            for (std::size_t j = 0; j < cols; ++j) tab[i][j] = tab[i][j] - f * tab[leave][j];
        }
        T fz = z[enter];
        if (!(fz == T{}))
            for (std::size_t j = 0; j < cols; ++j) z[j] = z[j] - fz * tab[leave][j];
        basis[leave] = enter;
    }

    SimplexOutcome<T> out;
    out.primal.assign(n, T{});
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) out.primal[basis[i]] = tab[i][cols - 1];
    out.dual.assign(m, T{});
    for (std::size_t i = 0; i < m; ++i) out.dual[i] = z[n + i];
    T obj{};
    for (const T& v : out.primal) obj = obj + v;
    out.objective = obj;
    return out;
}

} // namespace

GameSolution solve_game(const CostMatrix& a, double tol) {
    a.validate();
    const int q = a.q;
    const double shift = 1.0; // entries >= 0, so A + 1 > 0 and the value is positive
    std::vector<std::vector<double>> b(static_cast<std::size_t>(q),
                                       std::vector<double>(static_cast<std::size_t>(q)));
    for (int x = 0; x < q; ++x)
        for (int y = 0; y < q; ++y)
            b[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = a.at(x, y) + shift;

    auto res = simplex_game<double>(b, 1e-12);
    if (res.objective <= 0.0) throw std::runtime_error("solve_game: non-positive objective");
    double value_b = 1.0 / res.objective;

    std::vector<double> col(static_cast<std::size_t>(q)), row(static_cast<std::size_t>(q));
    double dual_sum = 0.0;
    for (int i = 0; i < q; ++i) dual_sum += res.dual[static_cast<std::size_t>(i)];
    if (dual_sum <= 0.0) throw std::runtime_error("solve_game: degenerate dual");
    for (int i = 0; i < q; ++i) {
        col[static_cast<std::size_t>(i)] = std::max(0.0, res.primal[static_cast<std::size_t>(i)] / res.objective);
        row[static_cast<std::size_t>(i)] = std::max(0.0, res.dual[static_cast<std::size_t>(i)] / dual_sum);
    }
    // Renormalize away the clamping noise.
    double cs = pairwise_sum(col), rs = pairwise_sum(row);
    for (auto& v : col) v /= cs;
    for (auto& v : row) v /= rs;

    GameSolution sol;
    sol.value = value_b - shift;
    sol.col_strategy = info::FiniteDistribution(col);
    sol.row_strategy = info::FiniteDistribution(row);

    // Loomis certificates.
    double worst_row = -std::numeric_limits<double>::infinity();
    for (int x = 0; x < q; ++x) {
        double v = 0.0;
        for (int y = 0; y < q; ++y) v += a.at(x, y) * col[static_cast<std::size_t>(y)];
        worst_row = std::max(worst_row, v);
    }
    double best_col = std::numeric_limits<double>::infinity();
    for (int y = 0; y < q; ++y) {
        double v = 0.0;
        for (int x = 0; x < q; ++x) v += a.at(x, y) * row[static_cast<std::size_t>(x)];
        best_col = std::min(best_col, v);
    }
    sol.row_residual = worst_row - sol.value;
    sol.col_residual = sol.value - best_col;
    if (sol.row_residual > tol || sol.col_residual > tol)
        throw std::runtime_error("solve_game: certificates fail (residuals " +
                                 std::to_string(sol.row_residual) + ", " +
                                 std::to_string(sol.col_residual) + ")");
    return sol;
}

RationalGameSolution solve_game_exact(const std::vector<std::vector<Rational>>& rows,
                                      const Caps& caps) {
    const std::size_t q = rows.size();
    if (q == 0) throw std::invalid_argument("solve_game_exact: empty matrix");
    if (static_cast<int>(q) > caps.exact_game_max_dim)
        throw std::runtime_error("solve_game_exact: dimension exceeds the rational-mode cap");
    Rational shift(1);
    std::vector<std::vector<Rational>> b(q, std::vector<Rational>(q));
    for (std::size_t x = 0; x < q; ++x) {
        if (rows[x].size() != q) throw std::invalid_argument("solve_game_exact: ragged rows");
        for (std::size_t y = 0; y < q; ++y) {
            if (rows[x][y] < Rational(0))
                throw std::invalid_argument("solve_game_exact: entries must be non-negative");
            b[x][y] = rows[x][y] + shift;
        }
    }
    auto res = simplex_game<Rational>(b, Rational(0));
    if (!(res.objective > Rational(0)))
        throw std::runtime_error("solve_game_exact: non-positive objective");

    RationalGameSolution sol;
    sol.value = Rational(1) / res.objective - shift;
    Rational dual_sum(0);
    for (const auto& d : res.dual) dual_sum += d;
    sol.col_strategy.resize(q);
    sol.row_strategy.resize(q);
    for (std::size_t i = 0; i < q; ++i) {
        sol.col_strategy[i] = res.primal[i] / res.objective;
        sol.row_strategy[i] = res.dual[i] / dual_sum;
    }

    // Exact certificate check.
    Rational value_b = Rational(1) / res.objective;
    for (std::size_t x = 0; x < q; ++x) {
        Rational v(0);
        for (std::size_t y = 0; y < q; ++y) v += b[x][y] * sol.col_strategy[y];
        if (v > value_b) throw std::runtime_error("solve_game_exact: row certificate fails");
    }
    for (std::size_t y = 0; y < q; ++y) {
        Rational v(0);
        for (std::size_t x = 0; x < q; ++x) v += b[x][y] * sol.row_strategy[x];
        if (v < value_b) throw std::runtime_error("solve_game_exact: column certificate fails");
    }
    return sol;
}

InputSequence rmg_input(const std::vector<Token>& chars) {
    InputSequence in;
    in.initial_state = 0;
    in.requests = chars;
    return in;
}

OnlineProblem rmg_problem(const CostMatrix& a, std::string name) {
    a.validate();
    const int q = a.q;
    auto matrix = std::make_shared<const CostMatrix>(a);

    OnlineProblem p;
    p.name = name.empty() ? ("rmg_q" + std::to_string(q)) : std::move(name);
    p.objective = Objective::min;
    p.initial_states = {0};
    p.reveal_before_answer = false; // the algorithm guesses before seeing x_i

    std::vector<Token> alphabet(static_cast<std::size_t>(q));
    for (int i = 0; i < q; ++i) alphabet[static_cast<std::size_t>(i)] = i;

    p.answer_alphabet = [alphabet](Token, std::span<const Token>, std::span<const Token>,
                                   Token) { return alphabet; };
    p.request_alphabet = [alphabet](Token, std::span<const Token>) { return alphabet; };
    p.step_cost = [matrix](Token, std::span<const Token>, std::span<const Token>, Token request,
                           Token answer) { return matrix->at(request, answer); };
    p.separable_step_cost = [matrix](const InputSequence& input, std::size_t step, Token answer) {
        return matrix->at(input.requests[step], answer);
    };
    p.enumerate_inputs = [q](std::size_t n) {
        std::vector<InputSequence> out;
        std::vector<Token> chars(n, 0);
        for (;;) {
            out.push_back(rmg_input(chars));
            std::size_t i = 0;
            while (i < n && ++chars[i] == q) chars[i++] = 0;
            if (i == n) break;
        }
        return out;
    };
    return p;
}

RandomizedAlgorithm rmg_random_alg(const CostMatrix& a, const GameSolution& solution) {
    RandomizedAlgorithm out;
    out.name = "rmg_random_q" + std::to_string(a.q);
    for (int y = 0; y < a.q; ++y)
        out.support.emplace_back(without_advice(constant_algorithm(y)),
                                 solution.col_strategy.mass(static_cast<std::size_t>(y)));
    return out;
}

AdviceAlgorithm rmg_advice_alg(const CostMatrix& a) {
    auto matrix = std::make_shared<const CostMatrix>(a);
    const int q = a.q;
    const int bits = q > 1 ? bits_for_count(static_cast<std::uint64_t>(q)) : 0;

    AdviceAlgorithm alg;
    alg.name = "rmg_advice_q" + std::to_string(q);
    alg.oracle_is_optimal = true;
    alg.advice_length = [bits](std::size_t) { return bits; };
    alg.oracle = [matrix, q, bits](const InputSequence& input) {
        double best = std::numeric_limits<double>::infinity();
        int best_y = 0;
        for (int y = 0; y < q; ++y) {
            double c = 0.0;
            for (Token x : input.requests) c += matrix->at(x, y);
            if (c < best) {
                best = c;
                best_y = y; // smallest index wins ties
            }
        }
        return BitString::from_uint(static_cast<std::uint64_t>(best_y), bits);
    };
    alg.body.name = alg.name + "_body";
    alg.body.decide = [q, bits](const DecideContext& ctx) {
        Token y = 0;
        if (bits > 0 && ctx.advice && ctx.advice->size() >= static_cast<std::size_t>(bits))
            y = static_cast<Token>(ctx.advice->to_uint(0, bits));
        if (y >= q) y = q - 1; // unused advice values
        return y;
    };
    return alg;
}

namespace {

RoundDistribution rmg_product_distribution(const CostMatrix& a,
                                           const info::FiniteDistribution& per_char, int n) {
    auto matrix = std::make_shared<const CostMatrix>(a);
    RoundDistribution dist;
    dist.rounds = n;
    BlockDistribution round;
    for (int x = 0; x < a.q; ++x) round.support.push_back({x});
    round.probs = per_char;
    dist.per_round.assign(static_cast<std::size_t>(n), round);
    dist.assemble = [](const std::vector<Block>& blocks) {
        std::vector<Token> chars;
        chars.reserve(blocks.size());
        for (const auto& b : blocks) chars.insert(chars.end(), b.begin(), b.end());
        return rmg_input(chars);
    };
    dist.round_cost = [matrix](int round, const std::vector<Block>& blocks,
                               const std::vector<Token>& answers) {
        return matrix->at(blocks[static_cast<std::size_t>(round)][0],
                          answers[static_cast<std::size_t>(round)]);
    };
    return dist;
}

} // namespace

RoundDistribution rmg_hard_distribution(const CostMatrix& a, const GameSolution& solution,
                                        int n) {
    return rmg_product_distribution(a, solution.row_strategy, n);
}

RoundDistribution rmg_uniform_distribution(const CostMatrix& a, int n) {
    return rmg_product_distribution(a, info::FiniteDistribution::uniform(static_cast<std::size_t>(a.q)),
                                    n);
}

} // namespace adv::games
