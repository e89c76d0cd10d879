#include "tensorion/lie.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <random>
#include <stdexcept>
#include <thread>

#include "tensorion/sampling.hpp"

namespace tensorion {

Matrix adjoint(const AlgebraTable& l, std::span<const Rational> x) {
    const std::size_t n = l.dim();
    if (x.size() != n) throw std::invalid_argument("adjoint: dimension mismatch");
    Matrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const Vector col = multiply(l, x, basis_element(l, j));
        for (std::size_t i = 0; i < n; ++i) m(i, j) = col[i];
    }
    return m;
}

BilinearForm killing_form(const AlgebraTable& l) {
    // K_ij = tr(ad_i ad_j) = sum_{k,m} c_{im}^k c_{jk}^m
    const std::size_t n = l.dim();
    BilinearForm b{Matrix(n, n)};
    std::vector<Rational> ad(n * n);  // ad[k * n + m] = c_{im}^k for the current i
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(ad.begin(), ad.end(), Rational());
        for (std::size_t m = 0; m < n; ++m)
            for (const auto& [k, c] : l.product(i, m)) ad[k * n + m] = c;
        for (std::size_t j = i; j < n; ++j) {
            Rational s;
            for (std::size_t k = 0; k < n; ++k)
                for (const auto& [m, c] : l.product(j, k)) s.add_product(c, ad[k * n + m]);
            b.matrix(i, j) = s;
            b.matrix(j, i) = std::move(s);
        }
    }
    return b;
}

Inertia inertia(const BilinearForm& b) {
    Matrix s = b.matrix;
    if (!s.is_square() || s.transpose() != s) throw std::invalid_argument("inertia: form is not symmetric");
    std::size_t n = s.rows();
    std::vector<std::size_t> alive(n);
    for (std::size_t i = 0; i < n; ++i) alive[i] = i;
    Inertia out;
    while (!alive.empty()) {
        std::optional<std::size_t> pivot;
        for (auto i : alive) {
            if (!s(i, i).is_zero()) {
                pivot = i;
                break;
            }
        }
        if (!pivot) {
            // Zero diagonal: replace e_i by e_i + e_j for some nonzero s_ij.
            std::optional<std::pair<std::size_t, std::size_t>> pair;
            for (auto i : alive) {
                for (auto j : alive) {
                    if (i != j && !s(i, j).is_zero()) {
                        pair = std::make_pair(i, j);
                        break;
                    }
                }
                if (pair) break;
            }
            if (!pair) {
                out.zero += alive.size();
                break;
            }
            const auto [i, j] = *pair;
            for (auto k : alive) s(i, k) += s(j, k);
            for (auto k : alive) s(k, i) += s(k, j);
            pivot = i;
        }
        const std::size_t p = *pivot;
        const Rational d = s(p, p);
        (d.sign() > 0 ? out.positive : out.negative) += 1;
        std::erase(alive, p);
        for (auto i : alive) {
            const Rational f = s(i, p) / d;
            if (f.is_zero()) continue;
            for (auto k : alive) {
                if (!s(p, k).is_zero()) s(i, k) -= f * s(p, k);
            }
        }
    }
    return out;
}

Subspace derived_algebra(const AlgebraTable& l) {
    const std::size_t n = l.dim();
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!l.product(i, j).empty()) rows.push_back(l.product(i, j).to_dense(n));
        }
    return Subspace::span(n, std::move(rows));
}

Subspace center_lie(const AlgebraTable& l) {
    const std::size_t n = l.dim();
    SparseEliminator elim(n);
    for (std::size_t j = 0; j < n && !elim.saturated(); ++j) {
        std::vector<std::vector<SparseVector::Entry>> rows(n);
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& [k, c] : l.product(i, j)) rows[k].emplace_back(static_cast<std::uint32_t>(i), c);
        for (auto& r : rows) {
            if (!r.empty()) elim.add_row(SparseVector(std::move(r)));
        }
    }
    return elim.null_space();
}

bool is_semisimple(const AlgebraTable& l) { return inertia(killing_form(l)).zero == 0; }

CosetTest symmetric_coset_test(const AlgebraTable& l, const Subspace& h) {
    const std::size_t n = l.dim();
    if (h.ambient_dim() != n) throw std::invalid_argument("symmetric_coset_test: subspace does not live in the algebra");
    if (!is_closed_under_product(l, h)) throw std::invalid_argument("symmetric_coset_test: h is not a subalgebra");
    CosetTest out;
    const BilinearForm k = killing_form(l);

    std::vector<Vector> constraints;
    for (const auto& b : h.basis()) constraints.push_back(k.matrix.apply(b));
    Subspace complement = Subspace::span(n, std::move(constraints)).annihilator();
    if (complement.dim() + h.dim() != n || h.intersection(complement).dim() != 0) {
        out.killing_complement = false;
        std::vector<bool> pivot(n, false);
        for (auto p : h.pivots()) pivot[p] = true;
        std::vector<Vector> rows;
        for (std::size_t i = 0; i < n; ++i) {
            if (!pivot[i]) rows.push_back(unit_vector(n, i));
        }
        complement = Subspace::span(n, std::move(rows));
    }
    out.complement_dim = complement.dim();
    for (const auto& u : complement.basis())
        for (const auto& v : complement.basis()) {
            if (!h.contains(multiply(l, u, v))) {
                out.cc_in_h = false;
                out.witness = std::make_pair(u, v);
                return out;
            }
        }
    return out;
}

// ---------------------------------------------------------------- Jacobi

namespace {

void jacobiator_into(const AlgebraTable& l, std::size_t i, std::size_t j, std::size_t k, Accumulator& acc) {
    for (const auto& [m, c] : l.product(i, j)) acc.add_scaled(l.product(m, k), c);
    for (const auto& [m, c] : l.product(j, k)) acc.add_scaled(l.product(m, i), c);
    for (const auto& [m, c] : l.product(k, i)) acc.add_scaled(l.product(m, j), c);
}

unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

struct ChunkResult {
    std::size_t checked = 0;
    std::size_t failing = 0;
    std::optional<std::array<std::size_t, 3>> first;
};

// Runs work(chunk, acc) for chunk = 0..chunks-1 on a pool and returns the
// per-chunk results in chunk order.
template <class Work>
std::vector<ChunkResult> run_chunks(std::size_t chunks, unsigned threads, std::size_t dim, Work work) {
    std::vector<ChunkResult> results(chunks);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        Accumulator acc(dim);
        for (std::size_t c = next++; c < chunks; c = next++) results[c] = work(c, acc);
    };
    const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(chunks, 1))));
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < count; ++t) pool.emplace_back(worker);
    worker();
    pool.clear();  // joins
    return results;
}

}  // namespace

SparseVector jacobiator(const AlgebraTable& l, std::size_t i, std::size_t j, std::size_t k) {
    Accumulator acc(l.dim());
    jacobiator_into(l, i, j, k, acc);
    return acc.take();
}

std::size_t triple_count(std::size_t dim) { return dim < 3 ? 0 : dim * (dim - 1) * (dim - 2) / 6; }

JacobiReport verify_jacobi(const AlgebraTable& l, const JacobiOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = l.dim();
    JacobiReport report;
    report.threads = resolve_threads(options.threads);

    for (std::size_t i = 0; i < n && report.antisymmetric; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const bool ok = i == j ? l.product(i, i).empty() : l.product(i, j) == l.product(j, i).scaled(Rational(-1));
            if (!ok) {
                report.antisymmetric = false;
                report.antisymmetry_witness = std::make_pair(i, j);
                break;
            }
        }

    std::vector<ChunkResult> results;
    if (!options.sampled) {
        results = run_chunks(n, report.threads, n, [&](std::size_t i, Accumulator& acc) {
            ChunkResult r;
            for (std::size_t j = i + 1; j < n; ++j)
                for (std::size_t k = j + 1; k < n; ++k) {
                    ++r.checked;
                    jacobiator_into(l, i, j, k, acc);
                    if (acc.take().empty()) continue;
                    ++r.failing;
                    if (!r.first) r.first = std::array<std::size_t, 3>{i, j, k};
                }
            return r;
        });
    } else if (n >= 3) {
        std::mt19937_64 rng(options.seed);
        std::vector<std::array<std::size_t, 3>> triples(options.samples);
        for (auto& t : triples) {
            std::size_t a = uniform_below(rng, n);
            std::size_t b = uniform_below(rng, n - 1);
            std::size_t c = uniform_below(rng, n - 2);
            // Map to three distinct indices, then sort.
            if (b >= a) ++b;
            std::array<std::size_t, 2> lo{std::min(a, b), std::max(a, b)};
            if (c >= lo[0]) ++c;
            if (c >= lo[1]) ++c;
            t = {a, b, c};
            std::sort(t.begin(), t.end());
        }
        constexpr std::size_t kBlock = 1024;
        const std::size_t chunks = (triples.size() + kBlock - 1) / kBlock;
        results = run_chunks(chunks, report.threads, n, [&](std::size_t chunk, Accumulator& acc) {
            ChunkResult r;
            const std::size_t end = std::min(triples.size(), (chunk + 1) * kBlock);
            for (std::size_t s = chunk * kBlock; s < end; ++s) {
                const auto& [i, j, k] = triples[s];
                ++r.checked;
                jacobiator_into(l, i, j, k, acc);
                if (acc.take().empty()) continue;
                ++r.failing;
                if (!r.first || triples[s] < *r.first) r.first = triples[s];
            }
            return r;
        });
    }

    for (const auto& r : results) {
        report.triples_checked += r.checked;
        report.failing_triples += r.failing;
        if (r.first && (!report.witness || *r.first < *report.witness)) report.witness = r.first;
    }
    report.jacobi = report.failing_triples == 0;
    if (report.witness) {
        const auto& [i, j, k] = *report.witness;
        report.jacobiator = jacobiator(l, i, j, k).to_dense(n);
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace tensorion
