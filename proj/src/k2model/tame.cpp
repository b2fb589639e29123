#include "modk2/k2model/tame.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace modk2::k2 {

namespace {

u64 mulmod(u64 a, u64 b, u64 n) { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % n); }
u64 addmod(u64 a, u64 b, u64 n) { return static_cast<u64>((static_cast<unsigned __int128>(a) + b) % n); }
u64 reduce_signed(i64 x, u64 n) {
    i64 r = static_cast<i64>(static_cast<u64>(x < 0 ? -(x + 1) : x) % n);
    if (x < 0) r = static_cast<i64>(n) - 1 - r;
    return static_cast<u64>(r);
}

}  // namespace

TameContext::TameContext(i64 level, std::vector<i64> primes) : table_(level, std::move(primes)) {
    const int n = cyclo::generator_count(level);
    for (std::size_t w = 0; w < table_.size(); ++w) {
        const auto& pl = table_[w];
        const auto& F = *pl.field;
        const u64 q1 = F.size() - 1;
        order_.push_back(q1);
        minus_one_log_.push_back(pl.ell == 2 ? 0 : q1 / 2);
        std::vector<u64> logs(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) logs[static_cast<std::size_t>(i)] = F.dlog(pl.gen_res[static_cast<std::size_t>(i)]);
        logs_.push_back(std::move(logs));
    }
}

u64 TameContext::galois_log(i64 t, std::size_t w) const {
    const std::size_t v = table_.galois_target(t, w);
    return table_[v].field->dlog(table_.galois_transport(t, w, table_[w].field->generator()));
}

TameVector TameVector::trivial(std::shared_ptr<const TameContext> ctx) {
    const std::size_t n = ctx->size();
    return TameVector(std::move(ctx), std::vector<u64>(n, 0));
}

cyclo::ResidueElt TameVector::value(std::size_t w) const {
    const auto& F = ctx_->table()[w].field;
    return {F, F->pow(F->generator(), logs_[w])};
}

TameVector TameVector::operator*(const TameVector& o) const {
    if (ctx_ != o.ctx_) throw std::invalid_argument("TameVector: context mismatch");
    std::vector<u64> r(logs_.size());
    for (std::size_t w = 0; w < r.size(); ++w) r[w] = addmod(logs_[w], o.logs_[w], ctx_->unit_order(w));
    return {ctx_, std::move(r)};
}

TameVector TameVector::pow(i64 e) const {
    std::vector<u64> r(logs_.size());
    for (std::size_t w = 0; w < r.size(); ++w) {
        const u64 n = ctx_->unit_order(w);
        r[w] = mulmod(logs_[w], reduce_signed(e, n), n);
    }
    return {ctx_, std::move(r)};
}

TameVector TameVector::inverse() const { return pow(-1); }

bool TameVector::is_trivial() const {
    return std::all_of(logs_.begin(), logs_.end(), [](u64 x) { return x == 0; });
}

TameVector TameVector::galois(i64 t) const {
    std::vector<u64> r(logs_.size(), 0);
    for (std::size_t w = 0; w < logs_.size(); ++w) {
        const std::size_t v = ctx_->table().galois_target(t, w);
        r[v] = mulmod(logs_[w], ctx_->galois_log(t, w), ctx_->unit_order(v));
    }
    return {ctx_, std::move(r)};
}

TameVector tame_eval(const std::shared_ptr<const TameContext>& ctx, const SymbolicK2& s) {
    if (s.level() != ctx->level()) throw std::invalid_argument("tame_eval: level mismatch");
    std::vector<u64> r(ctx->size(), 0);
    for (std::size_t w = 0; w < ctx->size(); ++w) {
        const auto& pl = ctx->table()[w];
        const u64 n = ctx->unit_order(w);
        const auto& L = ctx->gen_logs(w);
        u64 acc = 0;
        // (-1)^{v_i v_j} r_i^{v_j} r_j^{-v_i}
        for (auto& [ij, c] : s.terms()) {
            const i64 vi = pl.gen_val[static_cast<std::size_t>(ij.first)], vj = pl.gen_val[static_cast<std::size_t>(ij.second)];
            if (vi == 0 && vj == 0) continue;
            u64 t = mulmod(reduce_signed(checked_mul(vi, vj), n), ctx->minus_one_log(w), n);
            t = addmod(t, mulmod(reduce_signed(vj, n), L[static_cast<std::size_t>(ij.first)], n), n);
            t = addmod(t, mulmod(reduce_signed(-vi, n), L[static_cast<std::size_t>(ij.second)], n), n);
            acc = addmod(acc, mulmod(t, reduce_signed(c, n), n), n);
        }
        r[w] = acc;
    }
    return {ctx, std::move(r)};
}

NormMap::NormMap(std::shared_ptr<const TameContext> upper, std::shared_ptr<const TameContext> lower)
    : upper_(std::move(upper)), lower_(std::move(lower)) {
    cyclo::PlaceMatching match(upper_->table(), lower_->table());
    for (std::size_t w = 0; w < upper_->size(); ++w) {
        const std::size_t v = match.below(w);
        below_.push_back(v);
        cyclo::FpPoly nz = match.norm_down(w, upper_->table()[w].field->generator());
        norm_log_.push_back(lower_->table()[v].field->dlog(nz));
    }
}

TameVector NormMap::apply(const TameVector& x) const {
    if (x.context_ptr() != upper_) throw std::invalid_argument("NormMap: context mismatch");
    std::vector<u64> r(lower_->size(), 0);
    for (std::size_t w = 0; w < upper_->size(); ++w) {
        const std::size_t v = below_[w];
        const u64 n = lower_->unit_order(v);
        r[v] = addmod(r[v], mulmod(x.logs()[w] % n, norm_log_[w], n), n);
    }
    return {lower_, std::move(r)};
}

KComparison k_trivial(const TameVector& delta, const std::vector<i64>& discarded) {
    KComparison out;
    const TameVector sym = delta * delta.galois(-1);
    const auto& ctx = delta.context();
    for (std::size_t w = 0; w < ctx.size(); ++w) {
        u64 kept = ctx.unit_order(w);
        for (i64 p : discarded)
            while (kept % static_cast<u64>(p) == 0) kept /= static_cast<u64>(p);
        PlaceResidual r{ctx.table()[w].label(), ctx.unit_order(w), sym.logs()[w], kept};
        if (sym.logs()[w] % kept != 0) out.pass = false;
        out.residuals.push_back(std::move(r));
    }
    return out;
}

KComparison norm_compare(const NormMap& norm, const TameVector& upper, const TameVector& lower, const std::vector<i64>& discarded) {
    return k_trivial(norm.apply(upper) * lower.inverse(), discarded);
}

std::shared_ptr<const TameContext> tame_context(i64 level, std::vector<i64> primes) {
    static std::mutex mu;
    static std::map<std::pair<i64, std::vector<i64>>, std::shared_ptr<const TameContext>> memo;
    if (primes.empty()) primes = prime_divisors(level);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    std::lock_guard lock(mu);
    auto key = std::make_pair(level, primes);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    auto ctx = std::make_shared<const TameContext>(level, primes);
    memo[key] = ctx;
    return ctx;
}

}  // namespace modk2::k2
