// Acceptance gate: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "../support.hpp"
#include "toricmld/mld.hpp"
#include "toricmld/witness.hpp"

using namespace toricmld;
using testing::R;

namespace {

// Time limits in seconds and sample sizes.
constexpr double kLimitCyclic = 5.0;
constexpr double kLimitBasePerL = 1.0;
constexpr double kLimitTotal = 30.0;
constexpr double kLimitCertificate = 60.0;
constexpr double kLimitOracle = 120.0;
constexpr int kCertificateInstances = 200;
constexpr int kOracleInstances = 500;
constexpr int kUnimodularPerGolden = 50;
constexpr long kMaxIndexCertificate = 500;
constexpr long kMaxIndexOracle = 200;
// mld(X) >= kSlack / (2l), slope window and range.
const Rat kSlack = R(9, 10);
constexpr long kSlopeFrom = 4;
constexpr long kSlopeTo = 12;
constexpr double kSlopeMin = 3.5;
constexpr double kSlopeMax = 4.5;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool passed = true;
  std::ostringstream note;

  void fail(const std::string& why) {
    if (passed) note << why;
    passed = false;
  }
};

int failures = 0;

void report(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto start = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double t = seconds_since(start);
  if (!o.passed) ++failures;
  std::cout << (o.passed ? "PASS" : "FAIL") << "  criterion " << id << "  " << title << "  (" << std::fixed
            << std::setprecision(2) << t << " s)";
  const std::string note = o.note.str();
  if (!note.empty()) std::cout << "  " << note;
  std::cout << std::endl;
}

// Witness soundness, recomputed independently of the library's cone code.
void audit_witness(const ToricMfs& mfs, Outcome& o, const std::string& label) {
  const Rat delta = mld(mfs.base).value;
  WitnessReport rep = find_witness(mfs, delta);
  const auto& q = rep.point;
  const std::size_t m = mfs.fiber_dim;
  if (is_zero(q)) return o.fail(label + ": Q = 0");
  if (!mfs.total.lattice().contains(q)) return o.fail(label + ": Q not in N_X");
  for (std::size_t k = m; k < q.size(); ++k)
    if (q[k] < 0) return o.fail(label + ": F(Q) not >= 0");
  auto ld = testing::independent_ld(mfs.total.fan(), q);
  if (!ld) return o.fail(label + ": Q outside the fan");
  if (*ld != rep.log_discrepancy) return o.fail(label + ": ld(Q) mismatch");
  if (is_standard_simplex(generic_fiber(mfs).simplex_vertices)) {
    // ld(Q) <= 2m·δ^(1/(m+1))  <=>  ld^(m+1) <= (2m)^(m+1)·δ
    const unsigned e = static_cast<unsigned>(m + 1);
    const Rat two_m(static_cast<long>(2 * m));
    if (pow(*ld, e) > pow(two_m, e) * delta) o.fail(label + ": ld(Q) exceeds 2m·δ^(1/(m+1))");
  }
}

std::vector<ToricMfs>& certificate_instances() {
  static std::vector<ToricMfs> instances;
  return instances;
}

// Golden instances for the oracle and invariance suites.
std::vector<ToricVariety> golden_instances() {
  std::vector<ToricVariety> out;
  out.push_back(cyclic_quotient(17, {1, 1}));
  out.push_back(cyclic_quotient(5, {1, 2}));
  out.push_back(cyclic_quotient(2, {1, 1}));
  for (long l = 2; l <= 3; ++l) {
    ToricMfs f = example_family(l);
    out.push_back(f.total);
    out.push_back(f.base);
  }
  std::vector<RatVec> rays{{R(1), R(0), R(0)}, {R(0), R(1), R(0)}, {R(0), R(0), R(1)}};
  out.push_back(ToricVariety(Lattice::standard(3), Fan(3, rays, {{0, 1, 2}})));
  return out;
}

}  // namespace

int main() {
  report(1, "mld_cyclic(r,(1,1)) = 2/r for r = 2..1000", [](Outcome& o) {
    const auto start = Clock::now();
    for (long r = 2; r <= 1000; ++r)
      if (mld_cyclic(r, {1, 1}) != R(2, r)) return o.fail("r = " + std::to_string(r));
    if (seconds_since(start) > kLimitCyclic) o.fail("too slow");
  });

  report(2, "mld(Y) of example_family(l) = 2/(l^4+1), l = 2..12", [](Outcome& o) {
    for (long l = 2; l <= 12; ++l) {
      const auto start = Clock::now();
      ToricMfs f = example_family(l);
      Rat y = mld(f.base).value;
      if (seconds_since(start) > kLimitBasePerL) o.fail("l = " + std::to_string(l) + " too slow");
      if (y != make_rat(2, example_family_order(l))) o.fail("l = " + std::to_string(l) + ": " + to_string(y));
    }
  });

  std::vector<SweepRow> rows;
  report(3, "mld(X) >= 0.9/(2l) for l = 2..12 and log-log slope in [3.5, 4.5]", [&](Outcome& o) {
    const auto start = Clock::now();
    rows = sweep_family(2, 12);
    for (const auto& row : rows) {
      if (row.mld_total < kSlack / Rat(2 * row.l))
        o.fail("l = " + std::to_string(row.l) + ": mld(X) = " + to_string(row.mld_total));
      if (row.mld_total != testing::kFamilyMldTotal.at(row.l)) o.fail("l = " + std::to_string(row.l) + " golden");
    }
    auto slope = loglog_slope(rows, kSlopeFrom, kSlopeTo);
    if (!slope) return o.fail("no slope");
    o.note << "slope = " << std::setprecision(4) << *slope;
    if (*slope < kSlopeMin || *slope > kSlopeMax) o.fail("; slope out of range");
    if (seconds_since(start) > kLimitTotal) o.fail("too slow");
  });

  report(4, "check_eps_delta on >= 200 random standard-simplex instances", [](Outcome& o) {
    const auto start = Clock::now();
    int violations = 0;
    for (int i = 0; i < kCertificateInstances; ++i) {
      const std::size_t m = static_cast<std::size_t>(testing::uniform(1, 2));
      const std::size_t n = static_cast<std::size_t>(testing::uniform(1, 2));
      ToricMfs mfs = testing::random_standard_mfs(m, n, kMaxIndexCertificate);
      EpsDeltaCertificate c = check_eps_delta(mfs);
      const unsigned e = static_cast<unsigned>(m + 1);
      const Rat two_m(static_cast<long>(2 * m));
      if (!(pow(c.mld_total.value, e) <= pow(two_m, e) * c.mld_base.value) || !c.holds) ++violations;
      certificate_instances().push_back(std::move(mfs));
    }
    o.note << kCertificateInstances << " instances, " << violations << " violations";
    if (violations) o.fail("");
    if (seconds_since(start) > kLimitCertificate) o.fail("; too slow");
  });

  report(5, "find_witness soundness on the instances of criteria 3-4", [](Outcome& o) {
    for (long l = 2; l <= 12 && o.passed; ++l) audit_witness(example_family(l), o, "l = " + std::to_string(l));
    int k = 0;
    for (const auto& mfs : certificate_instances()) {
      if (!o.passed) break;
      audit_witness(mfs, o, "random #" + std::to_string(k++));
    }
    o.note << (11 + certificate_instances().size()) << " instances";
  });

  report(6, "mld = mld_bruteforce on >= 500 random instances plus goldens", [](Outcome& o) {
    const auto start = Clock::now();
    std::vector<ToricVariety> cases = golden_instances();
    while (cases.size() < static_cast<std::size_t>(kOracleInstances) + golden_instances().size()) {
      const std::size_t d = static_cast<std::size_t>(testing::uniform(1, 4));
      Lattice l = testing::random_overlattice(d, kMaxIndexOracle, kMaxIndexOracle);
      cases.push_back(testing::random_variety(l));
    }
    int mismatches = 0;
    for (const auto& x : cases) {
      MldResult a = mld(x);
      MldResult b = mld_bruteforce(x);
      if (a.value != b.value || a.witness != b.witness || a.cone_index != b.cone_index) ++mismatches;
    }
    o.note << cases.size() << " instances, " << mismatches << " mismatches";
    if (mismatches) o.fail("");
    if (seconds_since(start) > kLimitOracle) o.fail("; too slow");
  });

  report(7, "unimodular invariance, ld(P_i) = 1, homogeneity", [](Outcome& o) {
    std::vector<ToricVariety> all = golden_instances();
    for (long l = 4; l <= 6; ++l) all.push_back(example_family(l).total);
    for (const auto& x : all) {
      const Rat v = mld(x).value;
      for (int k = 0; k < kUnimodularPerGolden; ++k)
        if (mld(testing::transform(x, testing::random_unimodular(x.dim()))).value != v)
          return o.fail("mld changed under a basis change");
    }
    for (const auto& mfs : certificate_instances()) all.push_back(mfs.total);
    std::size_t rays = 0, samples = 0;
    for (const auto& x : all) {
      for (const auto& ray : x.fan().rays()) {
        ++rays;
        if (*log_discrepancy(x, ray) != 1) return o.fail("ld(P_i) != 1");
      }
      for (int s = 0; s < 5; ++s) {
        const auto& cone = x.fan().cones()[static_cast<std::size_t>(
            testing::uniform(0, static_cast<long>(x.fan().cones().size()) - 1))];
        RatVec v(x.dim(), 0);
        for (std::size_t i = 0; i < cone.dim(); ++i)
          v = v + Rat(testing::uniform(0, 5)) * cone.generators().row_vector(i);
        if (is_zero(v)) continue;
        const long k = testing::uniform(1, 9);
        ++samples;
        if (*log_discrepancy(x, Rat(k) * v) != Rat(k) * *log_discrepancy(x, v)) return o.fail("not homogeneous");
      }
    }
    o.note << all.size() << " instances, " << rays << " rays, " << samples << " homogeneity samples";
  });

  report(8, "validator on example_family and mutations", [](Outcome& o) {
    for (long l = 2; l <= 12; ++l) {
      ToricMfs f = example_family(l);
      ValidationReport rep = validate(f);
      if (!rep.overall) return o.fail("l = " + std::to_string(l) + " invalid");
      if (f.total.fan().rays().size() != 5) return o.fail("ray count");
      if (!rep.find(check::kRayCount)->passed || !rep.find(check::kRelativePicardRank)->passed)
        return o.fail("ray count / Picard rank");
      auto only = [&](const ToricMfs& mutated, const char* expected, const char* what) {
        auto failed = validate(mutated).failed();
        if (failed != std::vector<std::string>{expected}) o.fail(std::string(what) + " at l = " + std::to_string(l));
      };
      only(testing::drop_last_ray(f), check::kRayCount, "drop a ray");
      only(testing::break_surjectivity(f), check::kLatticeSurjective, "break surjectivity");
      only(testing::shift_fiber(f, 1, 2 * (l - 1)), check::kFiberSimplex, "shift fiber");
    }
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
