#include <stdexcept>

#include <doctest.h>

#include "qsn/surgery.h"

using namespace qsn;
using namespace qsn::surgery;

namespace {

struct Procedure {
  SurgeryLayout layout;
  Tableau tableau;
  ByproductRecord record;

  Procedure(int d, uint64_t seed, char left, char right, bool do_split)
      : layout(make_layout(d)), tableau(layout.num_qubits()) {
    Rng rng(seed);
    prepare_patch(layout.left, tableau, left, rng);
    prepare_patch(layout.right, tableau, right, rng);
    for (int q : layout.seam_data) tableau.reset_z(q, rng);
    record = merge(layout, tableau, rng);
    if (do_split) split(layout, tableau, rng, record, 0);
  }

  int sign(const PauliString& op) const { return corrected_sign(tableau, record, op); }

  PauliString merged_x() const { return logical_x(layout.merged, layout.num_qubits()); }
  PauliString merged_z() const { return logical_z(layout.merged, layout.num_qubits()); }
  PauliString xx() const {
    PauliString op = logical_x(layout.left, layout.num_qubits());
    for (int q : layout.right.logical_x_sites) op.set_x(q, true);
    return op;
  }
  PauliString zz() const {
    PauliString op = logical_z(layout.left, layout.num_qubits());
    for (int q : layout.right.logical_z_sites) op.set_z(q, true);
    return op;
  }
};

}  // namespace

TEST_CASE("layout: seam bridges the facing logical-Z edges") {
  for (int d : {2, 3, 4}) {
    const SurgeryLayout layout = make_layout(d);
    CHECK(layout.grid_cols == 2 * (2 * d - 1) + 1);
    CHECK(static_cast<int>(layout.seam_data.size()) == d - 1);
    CHECK(static_cast<int>(layout.seam_check_ids.size()) == d);
    // Merged patch: one encoded qubit over all data sites.
    CHECK(layout.merged.checks.size() == layout.merged.data_count() - 1);
    // Seam checks multiply up to X_L X_L: X support on the two facing
    // edge columns only, seam data cancelling pairwise.
    std::vector<int> coverage(layout.num_qubits(), 0);
    for (int k : layout.seam_check_ids)
      for (int q : layout.merged.checks[k].data_sites) coverage[q] ^= 1;
    for (int q : layout.seam_data) CHECK(coverage[q] == 0);
    int edge_cols = 0;
    for (int q = 0; q < layout.num_qubits(); ++q)
      if (coverage[q]) {
        const int c = q % layout.grid_cols;
        CHECK((c == 2 * d - 2 || c == 2 * d));
        ++edge_cols;
      }
    CHECK(edge_cols == 2 * d);
  }
  CHECK_THROWS_AS((void)make_layout(1), std::invalid_argument);
}

TEST_CASE("bell_pair_time evaluates 12*d*t") {
  CHECK(bell_pair_time(33, 3.5e-6) == doctest::Approx(1.386e-3).epsilon(1e-12));
  CHECK(bell_pair_time(11, 1.0e-4) == doctest::Approx(1.32e-2).epsilon(1e-12));
  CHECK(bell_pair_time(1, 0.5) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK_THROWS_AS((void)bell_pair_time(0, 1e-6), std::invalid_argument);
}

TEST_CASE("patch preparation lands in the exact code state") {
  for (char basis : {'0', '1', '+', '-'}) {
    const SurgeryLayout layout = make_layout(3);
    Rng rng(17);
    Tableau t(layout.num_qubits());
    prepare_patch(layout.left, t, basis, rng);
    const int n = layout.num_qubits();
    for (const auto& check : layout.left.checks) CHECK(t.peek_pauli(check_operator(check, n)) == 0);
    const PauliString zl = logical_z(layout.left, n);
    const PauliString xl = logical_x(layout.left, n);
    if (basis == '0') CHECK(t.peek_pauli(zl) == 0);
    if (basis == '1') CHECK(t.peek_pauli(zl) == 1);
    if (basis == '+') CHECK(t.peek_pauli(xl) == 0);
    if (basis == '-') CHECK(t.peek_pauli(xl) == 1);
  }
}

TEST_CASE("merge takes |0> x |phi> to merged |phi> up to the recorded byproduct") {
  for (uint64_t seed = 0; seed < 25; ++seed) {
    // Z-basis phi: exact, no logical byproduct in play.
    for (char phi : {'0', '1'}) {
      Procedure proc(3, seed, '0', phi, false);
      for (const auto& check : proc.layout.merged.checks)
        CHECK(proc.sign(check_operator(check, proc.layout.num_qubits())) == 0);
      CHECK(proc.sign(proc.merged_z()) == (phi == '1' ? 1 : 0));
    }
    // X-basis phi: exact up to the logical Z byproduct recorded when the
    // seam outcome product is -1.
    for (char phi : {'+', '-'}) {
      Procedure proc(3, seed, '0', phi, false);
      const int expect = (phi == '-' ? 1 : 0) ^ (proc.record.merge_product_minus ? 1 : 0);
      CHECK(proc.sign(proc.merged_x()) == expect);
    }
  }
}

TEST_CASE("merge of (|+>, |0>) yields merged |+>_L for every trajectory") {
  int minus_seen = 0;
  for (uint64_t seed = 0; seed < 50; ++seed) {
    Procedure proc(3, seed, '+', '0', false);
    for (const auto& check : proc.layout.merged.checks)
      CHECK(proc.sign(check_operator(check, proc.layout.num_qubits())) == 0);
    CHECK(proc.sign(proc.merged_x()) == 0);
    minus_seen += proc.record.merge_product_minus;
  }
  CHECK(minus_seen > 5);  // both outcome classes exercised
}

TEST_CASE("merge rejects a mismatched tableau") {
  const SurgeryLayout layout = make_layout(2);
  Tableau wrong(layout.num_qubits() + 1);
  Rng rng(1);
  CHECK_THROWS_AS((void)merge(layout, wrong, rng), std::invalid_argument);
}

TEST_CASE("split of merged (|0>,|0>) releases the logical Bell pair") {
  for (int d : {2, 3}) {
    for (uint64_t seed = 0; seed < 30; ++seed) {
      Procedure proc(d, seed, '0', '0', true);
      const int n = proc.layout.num_qubits();
      for (const CodePatch* patch : {&proc.layout.left, &proc.layout.right})
        for (const auto& check : patch->checks) CHECK(proc.sign(check_operator(check, n)) == 0);
      CHECK(proc.sign(proc.xx()) == 0);
      CHECK(proc.sign(proc.zz()) == 0);
    }
  }
}

TEST_CASE("split of a merged Z-basis state keeps the ZZ parity") {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    Procedure proc(3, seed, '0', '1', true);  // merged |1>_L
    CHECK(proc.sign(proc.zz()) == 1);         // alpha|00> + beta|11> with beta = 1
    CHECK(proc.sign(proc.xx()) == 0);
  }
}

TEST_CASE("merge+split of (|+>, |0>) ends in a product state, not a Bell pair") {
  // The |+> patch's logical X commutes with every seam operation, so its
  // value survives; no Pauli byproduct can then supply the Z_LZ_L
  // correlation. This documents why Bell pairs come from (|0>, |0>).
  for (uint64_t seed = 0; seed < 30; ++seed) {
    Procedure proc(3, seed, '+', '0', true);
    const int n = proc.layout.num_qubits();
    CHECK(proc.sign(logical_x(proc.layout.left, n)) == 0);   // |+> survived
    CHECK(proc.sign(logical_x(proc.layout.right, n)) == 0);  // partner pinned too
    CHECK(proc.sign(proc.xx()) == 0);
    CHECK(proc.sign(proc.zz()) == -1);  // not deterministic: no ZZ correlation
  }
}

TEST_CASE("outcome covariance: corrected signs agree across all trajectories") {
  // Different seam outcomes must differ only by the recorded byproduct,
  // i.e. every corrected stabilizer/logical sign is seed-independent.
  const SurgeryLayout layout = make_layout(3);
  const int n = layout.num_qubits();
  std::vector<int> reference;
  for (uint64_t seed = 0; seed < 40; ++seed) {
    Procedure proc(3, seed, '0', '0', true);
    std::vector<int> signs;
    for (const CodePatch* patch : {&proc.layout.left, &proc.layout.right})
      for (const auto& check : patch->checks) signs.push_back(proc.sign(check_operator(check, n)));
    signs.push_back(proc.sign(proc.xx()));
    signs.push_back(proc.sign(proc.zz()));
    if (seed == 0)
      reference = signs;
    else
      CHECK(signs == reference);
  }
}

TEST_CASE("noiseless rounds repeat outcomes (guarded by the merge itself)") {
  // merge() and split() assert round-to-round reproducibility internally;
  // completing without throwing is the check.
  for (uint64_t seed = 0; seed < 10; ++seed) CHECK_NOTHROW((void)Procedure(2, seed, '0', '0', true));
}

TEST_CASE("transversal X_L, Z_L and patch Hadamard map the Bell pair among Bell states") {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    // X_L on one patch: Phi+ -> Psi+ (ZZ flips sign, XX unchanged).
    {
      Procedure proc(2, seed, '0', '0', true);
      for (int q : proc.layout.right.logical_x_sites) proc.tableau.x(q);
      CHECK(proc.sign(proc.xx()) == 0);
      CHECK(proc.sign(proc.zz()) == 1);
    }
    // Z_L on one patch: Phi+ -> Phi- (XX flips sign).
    {
      Procedure proc(2, seed, '0', '0', true);
      for (int q : proc.layout.right.logical_z_sites) proc.tableau.z(q);
      CHECK(proc.sign(proc.xx()) == 1);
      CHECK(proc.sign(proc.zz()) == 0);
    }
    // Y_L = X_L Z_L on one patch: Phi+ -> Psi- (both flip).
    {
      Procedure proc(2, seed, '0', '0', true);
      for (int q : proc.layout.right.logical_x_sites) proc.tableau.x(q);
      for (int q : proc.layout.right.logical_z_sites) proc.tableau.z(q);
      CHECK(proc.sign(proc.xx()) == 1);
      CHECK(proc.sign(proc.zz()) == 1);
    }
    // Transversal Hadamard on both patches: Phi+ is H x H invariant; the
    // patches map onto their duals, so check the dual-code Bell operators
    // (X chains of the old Z supports and vice versa).
    {
      Procedure proc(2, seed, '0', '0', true);
      for (const CodePatch* patch : {&proc.layout.left, &proc.layout.right})
        for (int q : patch->data_sites) proc.tableau.h(q);
      const int n = proc.layout.num_qubits();
      PauliString dual_xx(n), dual_zz(n);
      for (const CodePatch* patch : {&proc.layout.left, &proc.layout.right}) {
        for (int q : patch->logical_z_sites) dual_xx.set_x(q, true);
        for (int q : patch->logical_x_sites) dual_zz.set_z(q, true);
      }
      // The byproduct record transforms alongside: H exchanges its X and
      // Z masks on the patch qubits, which corrected_sign does not model,
      // so compare raw parities against the H-conjugated correction.
      const int xx_raw = proc.tableau.peek_pauli(dual_xx);
      const int zz_raw = proc.tableau.peek_pauli(dual_zz);
      REQUIRE(xx_raw >= 0);
      REQUIRE(zz_raw >= 0);
      PauliString conj = proc.record.correction;
      for (const CodePatch* patch : {&proc.layout.left, &proc.layout.right})
        for (int q : patch->data_sites) {
          const bool xb = conj.x_bit(q), zb = conj.z_bit(q);
          conj.set_x(q, zb);
          conj.set_z(q, xb);
        }
      CHECK((xx_raw ^ (conj.commutes_with(dual_xx) ? 0 : 1)) == 0);
      CHECK((zz_raw ^ (conj.commutes_with(dual_zz) ? 0 : 1)) == 0);
    }
  }
}

TEST_CASE("verification report aggregates cases") {
  const VerificationReport report = verify_bell(2, 25, 1000);
  CHECK(report.cases_run == 25);
  CHECK(report.cases_passed == 25);
  CHECK(report.cases.size() == 25);
  const VerificationReport bad = verify_bell(2, 10, 1000, '+', '0');
  CHECK(bad.cases_passed == 0);  // product state: Z_LZ_L never stabilizes
}
