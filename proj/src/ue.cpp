#include "delone/ue.hpp"

namespace delone::ue {

namespace {

const Rational kHalf(1, 2);

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

}  // namespace

Rational delta_product(const Rational& alpha, const Rational& beta) {
  require(alpha >= 0 && alpha <= kHalf && beta >= 0 && beta <= kHalf, "offsets must lie in [0, 1/2]");
  return 2 * alpha * beta;
}

RatMatrix mix_matrix(const Rational& delta) {
  RatMatrix m(2, 2);
  m(0, 0) = m(1, 1) = kHalf + delta;
  m(0, 1) = m(1, 0) = kHalf - delta;
  return m;
}

std::optional<Rational> offset_of(const RatMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) return std::nullopt;
  const Rational d = m(0, 0) - kHalf;
  if (m(1, 1) != kHalf + d || m(0, 1) != kHalf - d || m(1, 0) != kHalf - d) return std::nullopt;
  return d;
}

Rational distance_to_uniform(const RatMatrix& m) {
  Rational best = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rational d = m(i, j) - kHalf;
      if (d < 0) d = -d;
      if (d > best) best = d;
    }
  return best;
}

std::vector<Arrangement> mix_arrangements() {
  std::vector<Arrangement> out;
  for (std::uint32_t primary : {0U, 1U}) {
    Arrangement a(3, 3, primary);
    for (std::int64_t r : {0, 2})
      for (std::int64_t c : {0, 2}) a.set(r, c, 1 - primary);
    out.push_back(std::move(a));
  }
  return out;
}

void mix_step(HierarchySpec& spec) {
  require(spec.patch_count(spec.depth()) == 2, "mixing needs exactly two patches");
  require(spec.width(spec.depth()) == spec.height(spec.depth()), "mixing needs square patches");
  spec.add_level(mix_arrangements(), {1, 1}, true, "mix");
}

UeBuild build_ue_spec(const nonrect::Schedule& schedule) {
  require(schedule.depth >= 1, "depth must be >= 1");
  UeBuild out{HierarchySpec(nonrect::initial_corners()), {}, {}, {}};
  auto record = [&]() {
    const std::size_t n = out.spec.depth();
    auto d = offset_of(block_frequency_matrix(out.spec, n - 1, n));
    if (!d) throw DomainError("transition matrix into level " + std::to_string(n) + " lost the symmetric form");
    out.deltas.push_back(*d);
  };
  for (std::size_t s = 1; s <= schedule.depth; ++s) {
    auto rec = nonrect::plan_step(out.spec, schedule, s);
    rec.first_level = out.spec.depth() + 1;
    for (std::int64_t i = 1; i <= rec.params.ell; ++i) {
      std::string note = "step " + std::to_string(s) + "." + std::to_string(i) + " N=" + std::to_string(rec.params.N);
      if (rec.n1) note += " control";
      nonrect::append_step(out.spec, rec.params.m * rec.params.P_star, rec.params.N, note);
      record();
    }
    out.steps.push_back(rec);
    mix_step(out.spec);
    out.mix_levels.push_back(out.spec.depth());
    record();
  }
  return out;
}

Rational offset_between(const UeBuild& build, std::size_t m, std::size_t n) {
  require(m >= 1 && m < n && n <= build.spec.depth(), "need 1 <= m < n <= depth");
  Rational off = build.deltas[m - 1];
  for (std::size_t k = m + 1; k < n; ++k) off = delta_product(off, build.deltas[k - 1]);
  return off;
}

Rational limit_density(const HierarchySpec& spec) {
  const auto d = nonrect::level_densities(spec, 1);
  require(d.size() == 2, "limit density needs two level-1 patches");
  return (d[0] + d[1]) / 2;
}

FrequencyReport frequency_convergence_report(const HierarchySpec& spec, const Patch& needle, std::size_t from,
                                             std::size_t to, std::size_t needle_index, std::uint64_t cap) {
  require(from >= 1 && from <= to && to <= spec.depth(), "level range outside the hierarchy");
  FrequencyReport rep;
  OccurrenceCounter counter(spec, needle, cap);
  const std::int64_t side = std::max(needle.width(), needle.height());
  std::vector<Rational> ref;
  for (std::size_t n = from; n <= to; ++n) {
    if (needle.width() > spec.width(n) || needle.height() > spec.height(n)) continue;
    const BigInt area = BigInt(spec.width(n)) * spec.height(n);
    std::vector<Rational> dens;
    for (std::size_t j = 0; j < spec.patch_count(n); ++j) {
      FrequencyRow row;
      row.level = n;
      row.patch = j;
      row.needle = needle_index;
      row.occurrences = counter.count(n, j, OccurrenceMode::sliding);
      row.density = Rational(row.occurrences, area);
      if (rep.reference_level != 0) {
        const RatMatrix f = block_frequency_matrix(spec, rep.reference_level, n);
        Rational lo = 0;
        for (std::size_t i = 0; i < ref.size(); ++i) lo += ref[i] * f(i, j);
        row.bracket_lo = lo;
        row.bracket_hi = lo + Rational(2 * side, spec.width(rep.reference_level));
        if (row.density < lo || row.density > *row.bracket_hi) rep.brackets_hold = false;
      }
      dens.push_back(row.density);
      rep.rows.push_back(row);
    }
    if (rep.reference_level == 0) {
      rep.reference_level = n;
      ref = dens;
    }
    if (dens.size() >= 2) {
      Rational s = dens[0] - dens[1];
      if (s < 0) s = -s;
      if (!rep.spread.empty() && s > rep.spread.back()) rep.spread_shrinks = false;
      rep.spread.push_back(s);
    }
  }
  return rep;
}

}  // namespace delone::ue
