#include "morsematch/optimize.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <future>
#include <random>
#include <sstream>
#include <thread>

namespace morsematch {

std::string to_string(Strategy strategy)
{
    return strategy == Strategy::lexicographic_greedy ? "lex" : "random";
}

Strategy parse_strategy(const std::string& text)
{
    if (text == "lex")
        return Strategy::lexicographic_greedy;
    if (text == "random")
        return Strategy::random;
    throw std::invalid_argument("unknown strategy '" + text + "' (expected lex or random)");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/** MORSE_DEBUG_ASSERT=1 re-checks acyclicity after every move. */
bool debug_asserts_enabled()
{
    static const bool enabled = [] {
        const char* value = std::getenv("MORSE_DEBUG_ASSERT");
        return value != nullptr && std::string(value) == "1";
    }();
    return enabled;
}

/**
 * Fisher-Yates with explicit index arithmetic; std::shuffle would tie
 * the output to the standard library implementation.
 */
template <typename T>
void deterministic_shuffle(std::vector<T>& values, std::mt19937_64& rng)
{
    for (std::size_t i = values.size(); i > 1; --i)
        std::swap(values[i - 1], values[rng() % i]);
}

bool vector_meets(const CriticalVector& vec, const CriticalVector& bounds)
{
    return vec == bounds;
}

struct RestartOutcome {
    GradientVectorField field;
    CriticalVector vector;
    std::vector<std::string> log;
};

/**
 * Look for a simultaneous-cancellation plan among small subsets of
 * critical cells in adjacent dimensions, lowest dimension first.
 * Candidate subsets are screened against a cached path-count matrix so
 * the expensive path enumeration runs once per critical cell.
 */
bool find_simultaneous_plan(const GradientVectorField& field, CancellationPlan& plan_out)
{
    const auto critical = critical_cells(field);
    for (int p = 0; p + 1 < static_cast<int>(critical.size()); ++p) {
        const std::vector<Matching>& sigmas = critical[p];
        const std::vector<Matching>& etas = critical[p + 1];
        const int ne = static_cast<int>(etas.size());
        const int ns = static_cast<int>(sigmas.size());
        if (ne < 2 || ns < 2)
            continue;

        std::vector<std::vector<int>> count(ne, std::vector<int>(ns, 0));
        for (int i = 0; i < ne; ++i) {
            for (const auto& [sigma, c] : path_endpoints(field, etas[i])) {
                auto it = std::lower_bound(sigmas.begin(), sigmas.end(), sigma);
                count[i][static_cast<int>(it - sigmas.begin())] = c;
            }
        }

        // Unique bijection with unique realizing paths, over the subset.
        auto subset_acceptable = [&](const std::vector<int>& ei, const std::vector<int>& sj) {
            const int k = static_cast<int>(ei.size());
            std::vector<char> used(k, 0);
            std::vector<int> pick(k, -1), witness;
            int matchings = 0;
            auto extend = [&](auto&& self, int i) -> void {
                if (matchings >= 2)
                    return;
                if (i == k) {
                    if (++matchings == 1)
                        witness = pick;
                    return;
                }
                for (int j = 0; j < k; ++j) {
                    if (used[j] || count[ei[i]][sj[j]] == 0)
                        continue;
                    used[j] = 1;
                    pick[i] = j;
                    self(self, i + 1);
                    used[j] = 0;
                }
            };
            extend(extend, 0);
            if (matchings != 1)
                return false;
            for (int i = 0; i < k; ++i)
                if (count[ei[i]][sj[witness[i]]] != 1)
                    return false;
            return true;
        };

        for (int k = 2; k <= 4 && k <= ne && k <= ns; ++k) {
            // Cap the subset enumeration before it explodes combinatorially.
            double combos = 1.0;
            for (int i = 0; i < k; ++i)
                combos *= double(ne - i) / (i + 1) * double(ns - i);
            if (combos > 2e5)
                break;

            std::vector<int> ei(k), sj(k);
            auto choose = [&](auto&& self, std::vector<int>& pick, int limit, int pos,
                              int start, const auto& body) -> bool {
                if (pos == k)
                    return body();
                for (int v = start; v < limit; ++v) {
                    pick[pos] = v;
                    if (self(self, pick, limit, pos + 1, v + 1, body))
                        return true;
                }
                return false;
            };
            bool found = choose(choose, ei, ne, 0, 0, [&]() {
                return choose(choose, sj, ns, 0, 0, [&]() {
                    if (!subset_acceptable(ei, sj))
                        return false;
                    std::vector<Matching> sub_etas, sub_sigmas;
                    for (int i : ei)
                        sub_etas.push_back(etas[i]);
                    for (int j : sj)
                        sub_sigmas.push_back(sigmas[j]);
                    SimultaneousCheck check = check_simultaneous(field, sub_etas, sub_sigmas);
                    if (!check.accepted())
                        return false;
                    plan_out = check.plan;
                    return true;
                });
            });
            if (found)
                return true;
        }
    }
    return false;
}

RestartOutcome run_restart(const SimplicialComplex& cplx, const SearchConfig& config,
                           std::uint64_t restart_seed, const CriticalVector& bounds)
{
    RestartOutcome outcome{initial_field(cplx, config.strategy, restart_seed), {}, {}};
    outcome.vector = critical_vector(outcome.field);

    int cancellations = 0;
    while (!vector_meets(outcome.vector, bounds) &&
           cancellations < config.max_cancellations_per_restart) {
        auto candidates = find_cancellable_pairs(outcome.field);
        if (!candidates.empty()) {
            const auto& [eta, sigma] = candidates.front();
            int path_len = 0;
            for (const GradientPath& path : enumerate_paths(outcome.field, eta))
                if (path.endpoint() == sigma)
                    path_len = path.length();
            outcome.field = cancel_pair(outcome.field, eta, sigma);
            outcome.log.push_back(cancellation_log_line(eta, sigma, path_len));
            ++cancellations;
        } else if (config.simultaneous_enabled) {
            CancellationPlan plan;
            if (!find_simultaneous_plan(outcome.field, plan))
                break;
            outcome.field = apply_plan(outcome.field, plan);
            for (const auto& entry : plan.entries) {
                outcome.log.push_back(
                    cancellation_log_line(entry.eta, entry.sigma, entry.path.length()));
                ++cancellations;
            }
        } else {
            break;
        }
        if (debug_asserts_enabled() && !is_acyclic(outcome.field))
            throw std::logic_error("acyclicity lost after a cancellation move");
        outcome.vector = critical_vector(outcome.field);
    }
    return outcome;
}

}  // namespace

GradientVectorField initial_field(const SimplicialComplex& cplx, Strategy strategy,
                                  std::uint64_t seed)
{
    GradientVectorField field = empty_field(cplx);
    std::mt19937_64 rng(seed);

    for (int d = 0; d < cplx.dimension(); ++d) {
        std::vector<int> order(cplx.cell_count(d));
        for (int i = 0; i < cplx.cell_count(d); ++i)
            order[i] = i;
        if (strategy == Strategy::random)
            deterministic_shuffle(order, rng);

        for (int i : order) {
            CellRef tau{d, i};
            if (!field.is_critical(tau))
                continue;
            std::vector<int> candidates = cplx.cofacet_indices(tau);
            if (strategy == Strategy::random)
                deterministic_shuffle(candidates, rng);
            for (int s : candidates) {
                CellRef sigma{d + 1, s};
                if (!field.is_critical(sigma))
                    continue;
                if (can_pair_acyclically(field, tau, sigma)) {
                    field.set_pair_unchecked(tau, sigma);
                    break;
                }
            }
        }
    }
    if (!is_acyclic(field))
        throw std::logic_error("initial field construction broke acyclicity");
    return field;
}

GradientVectorField initial_field(const SimplicialComplex& cplx, const SearchConfig& config)
{
    return initial_field(cplx, config.strategy, config.seed);
}

OptimalityCertificate optimize(const SimplicialComplex& cplx, const SearchConfig& config)
{
    HomologySummary summary = homology_of(simplicial_chain_complex(cplx));
    const CriticalVector bounds = morse_lower_bounds(summary);

    OptimalityCertificate cert;
    cert.n = cplx.order();
    cert.strategy = config.strategy;
    cert.seed = config.seed;
    cert.max_restarts = config.max_restarts;
    cert.max_cancellations = config.max_cancellations_per_restart;
    cert.simultaneous_enabled = config.simultaneous_enabled;
    cert.homology = summary;
    cert.lower_bounds = bounds;

    // The greedy strategy is deterministic, so one restart tells all.
    const int restarts = config.strategy == Strategy::lexicographic_greedy
                             ? std::min(config.max_restarts, 1)
                             : config.max_restarts;
    const int threads = config.threads > 0
                            ? config.threads
                            : std::max(1u, std::thread::hardware_concurrency());

    GradientVectorField best_field = empty_field(cplx);
    CriticalVector best_vector = critical_vector(best_field);
    std::vector<std::string> best_log;
    int best_restart = -1;
    bool optimal = false;

    // Batches run concurrently, but results are consumed strictly in
    // restart order, so the outcome is independent of the thread count.
    for (int base = 0; base < restarts && !optimal; base += threads) {
        const int batch = std::min(threads, restarts - base);
        std::vector<std::future<RestartOutcome>> futures;
        for (int r = 0; r < batch; ++r) {
            std::uint64_t restart_seed = splitmix64(config.seed ^ splitmix64(base + r));
            futures.push_back(std::async(std::launch::async, run_restart, std::cref(cplx),
                                         std::cref(config), restart_seed, std::cref(bounds)));
        }
        for (int r = 0; r < batch; ++r) {
            RestartOutcome outcome = futures[r].get();
            if (best_restart < 0 || outcome.vector < best_vector) {
                best_field = std::move(outcome.field);
                best_vector = outcome.vector;
                best_log = std::move(outcome.log);
                best_restart = base + r;
            }
            if (vector_meets(best_vector, bounds)) {
                optimal = true;
                break;
            }
        }
    }

    cert.restart = best_restart;
    cert.critical = critical_cells(best_field);
    cert.pairs = best_field.pairs();
    cert.log = std::move(best_log);
    cert.critical_vector = best_vector;
    cert.verdict = optimal ? Verdict::optimal : Verdict::budget_exhausted;
    return cert;
}

bool verify_certificate(const SimplicialComplex& cplx, const OptimalityCertificate& cert)
{
    if (cert.n != cplx.order())
        return false;
    GradientVectorField field = empty_field(cplx);
    try {
        for (const auto& [tau, sigma] : cert.pairs)
            field = add_pair(field, tau, sigma);
    } catch (const std::exception&) {
        return false;
    }
    if (!is_acyclic(field))
        return false;
    if (critical_cells(field) != cert.critical)
        return false;
    if (critical_vector(field) != cert.critical_vector)
        return false;

    HomologySummary summary = homology_of(simplicial_chain_complex(cplx));
    if (summary.betti != cert.homology.betti || summary.torsion != cert.homology.torsion)
        return false;
    CriticalVector bounds = morse_lower_bounds(summary);
    if (bounds != cert.lower_bounds)
        return false;

    HomologySummary morse = homology_of(morse_boundary(field));
    if (morse.betti != summary.betti || morse.torsion != summary.torsion)
        return false;

    const bool meets = cert.critical_vector == bounds;
    return meets == (cert.verdict == Verdict::optimal);
}

void write_certificate(std::ostream& os, const OptimalityCertificate& cert)
{
    os << "morsematch-certificate v1\n";
    os << "[meta]\n";
    os << "n = " << cert.n << "\n";
    os << "strategy = " << to_string(cert.strategy) << "\n";
    os << "seed = " << cert.seed << "\n";
    os << "max_restarts = " << cert.max_restarts << "\n";
    os << "max_cancellations = " << cert.max_cancellations << "\n";
    os << "simultaneous = " << (cert.simultaneous_enabled ? "on" : "off") << "\n";
    os << "restart = " << cert.restart << "\n";
    os << "[critical]\n";
    for (int d = 0; d < static_cast<int>(cert.critical.size()); ++d)
        for (const Matching& cell : cert.critical[d])
            os << d << ": " << to_string(cell) << "\n";
    os << "[pairs]\n";
    for (const auto& [tau, sigma] : cert.pairs)
        os << to_string(tau) << " => " << to_string(sigma) << "\n";
    os << "[log]\n";
    for (const std::string& line : cert.log)
        os << line << "\n";
    os << "[homology]\n";
    os << homology_report(cert.homology);
    os << "[verdict]\n";
    os << "critical_vector = " << format_counts(cert.critical_vector) << "\n";
    os << "verdict = " << (cert.verdict == Verdict::optimal ? "optimal" : "budget-exhausted")
       << "\n";
}

void write_certificate_file(const std::string& path, const OptimalityCertificate& cert)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path + " for writing");
    write_certificate(out, cert);
    if (!out.flush())
        throw std::runtime_error("failed writing " + path);
}

namespace {

std::string meta_value(const std::string& line, const std::string& key)
{
    const std::string prefix = key + " = ";
    if (line.rfind(prefix, 0) != 0)
        throw ParseError("expected '" + key + " = ...', got '" + line + "'");
    return line.substr(prefix.size());
}

CriticalVector parse_counts(const std::string& text)
{
    if (text.size() < 2 || text.front() != '(' || text.back() != ')')
        throw ParseError("expected a count vector, got '" + text + "'");
    CriticalVector counts;
    std::string inner = text.substr(1, text.size() - 2);
    if (inner.empty())
        return counts;
    std::istringstream in(inner);
    std::string token;
    while (std::getline(in, token, ','))
        counts.push_back(std::stoi(token));
    return counts;
}

void parse_homology_group(const std::string& text, int& betti, std::vector<Int>& torsion)
{
    betti = 0;
    torsion.clear();
    if (text == "0")
        return;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t next = text.find(" + ", pos);
        std::string part =
            text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        if (part == "Z")
            betti += 1;
        else if (part.rfind("Z^", 0) == 0)
            betti += std::stoi(part.substr(2));
        else if (part.rfind("Z/", 0) == 0)
            torsion.push_back(Int(part.substr(2)));
        else
            throw ParseError("cannot parse homology group '" + text + "'");
        if (next == std::string::npos)
            break;
        pos = next + 3;
    }
}

}  // namespace

namespace {

OptimalityCertificate read_certificate_lines(const std::vector<std::string>& lines);

}  // namespace

OptimalityCertificate read_certificate(std::istream& is)
{
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(is, line))
        lines.push_back(line);
    try {
        return read_certificate_lines(lines);
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(std::string("malformed certificate: ") + e.what());
    }
}

namespace {

OptimalityCertificate read_certificate_lines(const std::vector<std::string>& lines)
{
    std::size_t at = 0;
    auto next_line = [&]() -> const std::string& {
        if (at >= lines.size())
            throw ParseError("unexpected end of certificate");
        return lines[at++];
    };
    auto expect = [&](const std::string& want) {
        const std::string& got = next_line();
        if (got != want)
            throw ParseError("expected '" + want + "', got '" + got + "'");
    };

    OptimalityCertificate cert;
    expect("morsematch-certificate v1");
    expect("[meta]");
    cert.n = std::stoi(meta_value(next_line(), "n"));
    cert.strategy = parse_strategy(meta_value(next_line(), "strategy"));
    cert.seed = std::stoull(meta_value(next_line(), "seed"));
    cert.max_restarts = std::stoi(meta_value(next_line(), "max_restarts"));
    cert.max_cancellations = std::stoi(meta_value(next_line(), "max_cancellations"));
    cert.simultaneous_enabled = meta_value(next_line(), "simultaneous") == "on";
    cert.restart = std::stoi(meta_value(next_line(), "restart"));

    expect("[critical]");
    while (at < lines.size() && lines[at] != "[pairs]") {
        const std::string& entry = lines[at++];
        auto colon = entry.find(": ");
        if (colon == std::string::npos)
            throw ParseError("bad critical-cell line '" + entry + "'");
        int d = std::stoi(entry.substr(0, colon));
        if (d < 0)
            throw ParseError("bad dimension in '" + entry + "'");
        if (static_cast<int>(cert.critical.size()) <= d)
            cert.critical.resize(d + 1);
        cert.critical[d].push_back(parse_matching(entry.substr(colon + 2)));
    }
    expect("[pairs]");
    while (at < lines.size() && lines[at] != "[log]") {
        const std::string& entry = lines[at++];
        auto arrow = entry.find(" => ");
        if (arrow == std::string::npos)
            throw ParseError("bad pair line '" + entry + "'");
        cert.pairs.emplace_back(parse_matching(entry.substr(0, arrow)),
                                parse_matching(entry.substr(arrow + 4)));
    }
    expect("[log]");
    while (at < lines.size() && lines[at] != "[homology]")
        cert.log.push_back(lines[at++]);
    expect("[homology]");
    while (at < lines.size() && lines[at] != "[verdict]") {
        const std::string& entry = lines[at++];
        if (entry.rfind("H_", 0) == 0) {
            auto eq = entry.find(" = ");
            if (eq == std::string::npos)
                throw ParseError("bad homology line '" + entry + "'");
            int k = std::stoi(entry.substr(2, eq - 2));
            if (static_cast<int>(cert.homology.betti.size()) <= k) {
                cert.homology.betti.resize(k + 1, 0);
                cert.homology.torsion.resize(k + 1);
            }
            parse_homology_group(entry.substr(eq + 3), cert.homology.betti[k],
                                 cert.homology.torsion[k]);
        } else if (entry.rfind("lower_bounds = ", 0) == 0) {
            cert.lower_bounds = parse_counts(entry.substr(15));
        } else {
            throw ParseError("unexpected homology line '" + entry + "'");
        }
    }
    expect("[verdict]");
    cert.critical_vector = parse_counts(meta_value(next_line(), "critical_vector"));
    const std::string verdict = meta_value(next_line(), "verdict");
    if (verdict == "optimal")
        cert.verdict = Verdict::optimal;
    else if (verdict == "budget-exhausted")
        cert.verdict = Verdict::budget_exhausted;
    else
        throw ParseError("unknown verdict '" + verdict + "'");
    if (at != lines.size())
        throw ParseError("trailing lines after [verdict] section");

    // Sizes of per-dimension data must agree with the critical vector.
    if (cert.critical.size() < cert.critical_vector.size())
        cert.critical.resize(cert.critical_vector.size());
    return cert;
}

}  // namespace

OptimalityCertificate read_certificate_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    return read_certificate(in);
}

}  // namespace morsematch
