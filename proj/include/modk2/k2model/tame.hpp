#pragma once

// Tame-symbol backend: symbols are evaluated at finite places in discrete-log
// coordinates, pushed down by residue-field norms, and compared in the
// conjugation-coinvariant quotient with chosen primary parts discarded.

#include <memory>
#include <string>
#include <vector>

#include "modk2/cyclo/places.hpp"
#include "modk2/k2model/symbols.hpp"

namespace modk2::k2 {

/// A place table with discrete logs of every generator residue precomputed.
class TameContext {
public:
    TameContext(i64 level, std::vector<i64> primes = {});

    i64 level() const { return table_.level(); }
    const cyclo::PlaceTable& table() const { return table_; }
    std::size_t size() const { return table_.size(); }
    /// q_w - 1
    u64 unit_order(std::size_t w) const { return order_[w]; }
    u64 gen_log(std::size_t w, int generator) const { return logs_[w][static_cast<std::size_t>(generator)]; }
    const std::vector<u64>& gen_logs(std::size_t w) const { return logs_[w]; }
    u64 minus_one_log(std::size_t w) const { return minus_one_log_[w]; }
    /// dlog in k(sigma_t w) of the image of the generator of k(w).
    u64 galois_log(i64 t, std::size_t w) const;

private:
    cyclo::PlaceTable table_;
    std::vector<u64> order_;
    std::vector<u64> minus_one_log_;
    std::vector<std::vector<u64>> logs_;
};

/// Tame symbols at every place of a context, as exponents of the residue-field generators.
class TameVector {
public:
    TameVector() = default;
    TameVector(std::shared_ptr<const TameContext> ctx, std::vector<u64> logs) : ctx_(std::move(ctx)), logs_(std::move(logs)) {}
    static TameVector trivial(std::shared_ptr<const TameContext> ctx);

    const TameContext& context() const { return *ctx_; }
    const std::shared_ptr<const TameContext>& context_ptr() const { return ctx_; }
    const std::vector<u64>& logs() const { return logs_; }
    cyclo::ResidueElt value(std::size_t w) const;

    TameVector operator*(const TameVector& o) const;
    TameVector inverse() const;
    TameVector pow(i64 e) const;
    bool is_trivial() const;
    bool operator==(const TameVector& o) const { return logs_ == o.logs_; }

    /// sigma_t acting by transport of structure.
    TameVector galois(i64 t) const;

private:
    std::shared_ptr<const TameContext> ctx_;
    std::vector<u64> logs_;
};

TameVector tame_eval(const std::shared_ptr<const TameContext>& ctx, const SymbolicK2& s);

/// Residue-field norms from the places of level N to those of level M (M | N).
class NormMap {
public:
    NormMap(std::shared_ptr<const TameContext> upper, std::shared_ptr<const TameContext> lower);
    TameVector apply(const TameVector& x) const;
    std::size_t below(std::size_t w) const { return below_[w]; }

private:
    std::shared_ptr<const TameContext> upper_, lower_;
    std::vector<std::size_t> below_;
    std::vector<u64> norm_log_;  // dlog in k(v) of the norm of the generator of k(w)
};

struct PlaceResidual {
    std::string place;
    u64 unit_order = 0;
    u64 log = 0;           // (1 + c) delta at this place
    u64 kept_modulus = 0;  // part of q - 1 prime to the discarded primes
};

struct KComparison {
    bool pass = true;
    std::vector<PlaceResidual> residuals;  // every place, for the certificate
};

/// Whether delta dies in the quotient: (1 + c) delta has trivial part prime to `discarded`.
KComparison k_trivial(const TameVector& delta, const std::vector<i64>& discarded = {2});

/// Norm_{N/M}(tame(s_upper)) against tame(s_lower) in the K_M sense.
KComparison norm_compare(const NormMap& norm, const TameVector& upper, const TameVector& lower, const std::vector<i64>& discarded = {2});

/// Cached context per (level, primes).
std::shared_ptr<const TameContext> tame_context(i64 level, std::vector<i64> primes = {});

}  // namespace modk2::k2
