//! Acceptance run: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qutrit_mub::factor_group::{verify_all_choices, verify_factor_theorem};
use qutrit_mub::mcs::{enumerate_all_mcs, McsCatalog};
use qutrit_mub::mub::{
    bases_for, hermitian_pair, verify_mutually_unbiased, verify_operator_orthonormality, verify_projectors,
    verify_unbiased, BasisSet,
};
use qutrit_mub::partition::{
    body_totals, enumerate_partitions, find_partition_with_structure, group_by_separable,
    standard_two_qutrit_partition, WitnessOptions, WitnessSearch,
};
use qutrit_mub::pauli::{clock_matrix, shift_matrix};
use qutrit_mub::states::{aharonov, expand, ghz_basis, ghz_variant, product_basis, sb_basis};
use qutrit_mub::tomography::{random_mixture, reconstruct_direct, round_trip, Mubs};
use qutrit_mub::{CycMatrix, CycNum, EntanglementClass, Mcs, Partition, PauliOp, Rational};

#[derive(Default)]
struct Outcome {
    checks: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(msg());
        }
    }

    fn note(&mut self, msg: impl Into<String>) {
        self.notes.push(msg.into());
    }

    fn within(&mut self, start: Instant, limit: Duration) {
        let t = start.elapsed();
        self.check(t < limit, || format!("runtime {:.1} s exceeds {:.0} s", t.as_secs_f64(), limit.as_secs_f64()));
    }
}

type Body = fn(&mut Outcome) -> qutrit_mub::Result<()>;

fn ops(list: &[&str]) -> Vec<PauliOp> {
    list.iter().map(|s| s.parse().unwrap()).collect()
}

fn names(ops: &[PauliOp]) -> BTreeSet<String> {
    ops.iter().map(|o| o.canonical().to_string()).collect()
}

fn set(list: &[&str]) -> BTreeSet<String> {
    names(&ops(list))
}

fn r(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

fn digits(label: &[u8]) -> Vec<u8> {
    label.to_vec()
}

fn t3(v: i64) -> u8 {
    v.rem_euclid(3) as u8
}

// ---------------------------------------------------------------- 1

/// Single-qutrit factor-group columns for two choices of identity element.
const FACTOR_COLUMNS_ONE_QUTRIT: [(&str, [&str; 3], [&str; 3]); 2] =
    [("Z", ["X", "Y", "V"], ["X2", "Y2", "V2"]), ("X", ["V", "Y2", "Z2"], ["V2", "Y", "Z"])];

fn criterion_1(o: &mut Outcome) -> qutrit_mub::Result<()> {
    let start = Instant::now();
    let all = enumerate_all_mcs(1)?;
    o.check(all.len() == 4, || format!("{} one-qutrit MCS's, expected 4", all.len()));
    let parts = enumerate_partitions(1)?;
    o.check(parts.len() == 1, || format!("{} one-qutrit partitions, expected 1", parts.len()));
    let p = &parts[0];

    let bases = bases_for(p.mcs())?;
    for i in 0..bases.len() {
        for j in i + 1..bases.len() {
            let rep = verify_unbiased(&bases[i], &bases[j], true);
            o.check(rep.passed(), || rep.to_string());
            for (si, ni) in bases[i].states().iter().zip(bases[i].norms()) {
                for (sj, nj) in bases[j].states().iter().zip(bases[j].norms()) {
                    let ov = qutrit_mub::mub::overlap(si, ni, sj, nj);
                    o.check(ov == r(1, 3), || format!("overlap {ov} between {} and {}", bases[i].source(), bases[j].source()));
                }
            }
        }
    }

    let reports = verify_all_choices(p)?;
    o.check(reports.len() == 4, || format!("{} identity choices", reports.len()));
    for rep in &reports {
        o.check(rep.passed(), || rep.to_string());
        let col = |name: &str| -> BTreeSet<String> {
            rep.columns.iter().find(|(n, _)| n == name).map(|(_, v)| v.iter().cloned().collect()).unwrap_or_default()
        };
        let identity = p.mcs()[rep.identity_index].member_ops();
        o.check(col("E") == names(&identity), || format!("identity column of {} is {:?}", rep.identity, col("E")));
        // The L column holds the squares of the R column.
        let squares: BTreeSet<String> = col("R").iter().map(|s| s.parse::<PauliOp>().unwrap().pow(2).canonical().to_string()).collect();
        o.check(squares == col("L"), || format!("L column of {} is {:?}, squares of R are {:?}", rep.identity, col("L"), squares));
        o.check(col("R").len() == 3, || format!("R column of {} has {} entries", rep.identity, col("R").len()));
    }
    for (e, rc, lc) in FACTOR_COLUMNS_ONE_QUTRIT {
        let idx = p.mcs().iter().position(|m| m.contains(&e.parse().unwrap())).unwrap();
        let rep = verify_factor_theorem(p, idx)?;
        let col = |name: &str| -> BTreeSet<String> {
            rep.columns.iter().find(|(n, _)| n == name).map(|(_, v)| v.iter().cloned().collect()).unwrap()
        };
        o.check(col("R") == set(&rc), || format!("identity {e}: R column {:?}, expected {rc:?}", col("R")));
        o.check(col("L") == set(&lc), || format!("identity {e}: L column {:?}, expected {lc:?}", col("L")));
    }
    o.within(start, Duration::from_secs(1));
    Ok(())
}

// ---------------------------------------------------------------- 2

/// The two-qutrit partition as printed: rows are MCS's, columns are the
/// cosets EE, ER, EL, RE, RR, RL, LE, LR, LL of the first row.
const TABLE_TWO_QUTRIT: [[&str; 9]; 10] = [
    ["II", "IZ", "IZ2", "ZI", "ZZ", "ZZ2", "Z2I", "Z2Z", "Z2Z2"],
    ["", "IX", "IX2", "XI", "XX", "XX2", "X2I", "X2X", "X2X2"],
    ["", "IY", "IY2", "YI", "YY", "YY2", "Y2I", "Y2Y", "Y2Y2"],
    ["", "IV", "IV2", "VI", "VV", "VV2", "V2I", "V2V", "V2V2"],
    ["", "ZX", "Z2X2", "VZ", "XY", "YV2", "V2Z2", "Y2V", "X2Y2"],
    ["", "ZY", "Z2Y2", "XZ", "YV", "VX2", "X2Z2", "V2X", "Y2V2"],
    ["", "ZV", "Z2V2", "YZ", "VX", "XY2", "Y2Z2", "X2Y", "V2X2"],
    ["", "Z2X", "ZX2", "YZ2", "XV", "VY2", "Y2Z", "V2Y", "X2V2"],
    ["", "Z2Y", "ZY2", "VZ2", "YX", "XV2", "V2Z", "X2V", "Y2X2"],
    ["", "Z2V", "ZV2", "XZ2", "VY", "YX2", "X2Z", "Y2X", "V2Y2"],
];
const COSET_NAMES: [&str; 9] = ["EE", "ER", "EL", "RE", "RR", "RL", "LE", "LR", "LL"];

fn criterion_2(o: &mut Outcome) -> qutrit_mub::Result<()> {
    let start = Instant::now();
    let all = enumerate_all_mcs(2)?;
    o.check(all.len() == 40 && all.len() == (3 + 1) * (9 + 1), || format!("{} two-qutrit MCS's, expected 40", all.len()));

    let parts = enumerate_partitions(2)?;
    o.check(parts.len() == 48, || format!("{} partitions, expected 48", parts.len()));
    for p in &parts {
        let s = p.structure()?;
        o.check(s.s == 4 && s.b == 6 && s.total() == 10, || format!("partition with structure {s}"));
    }
    let groups = group_by_separable(&parts)?;
    o.check(groups.len() == 24, || format!("{} separable quartets, expected 24", groups.len()));
    let sizes: Vec<usize> = groups.values().map(Vec::len).collect();
    let twos = sizes.iter().filter(|&&k| k == 2).count();
    o.check(twos == 24, || {
        format!("{twos} quartets with 2 completions and {} with 1, expected 24 with 2", sizes.len() - twos)
    });

    let table = Partition::new(
        TABLE_TWO_QUTRIT
            .iter()
            .map(|row| Mcs::span(&ops(&[row[1], row[3]])))
            .collect::<qutrit_mub::Result<Vec<_>>>()?,
    )?;
    let std = standard_two_qutrit_partition();
    o.check(table.mcs() == std.mcs(), || "printed partition differs from the reference partition".into());
    o.check(parts.iter().any(|p| p.mcs() == table.mcs()), || "printed partition not found by enumeration".into());
    for (k, row) in TABLE_TWO_QUTRIT.iter().enumerate() {
        let m = Mcs::span(&ops(&[row[1], row[3]]))?;
        o.check(m.member_ops().len() == 8 && names(&m.member_ops()) == set(&row[1..]), || format!("row {} is not an MCS", k + 1));
    }
    let base = Mcs::from_generator_str("ZI,IZ")?;
    for (c, coset) in qutrit_mub::factor_group::cosets(&base)?.iter().enumerate() {
        o.check(coset.name() == COSET_NAMES[c], || format!("coset {c} is named {}", coset.name()));
        // The first row is the subgroup itself; the other rows sit in the coset of their column.
        let head: PauliOp = TABLE_TWO_QUTRIT[0][c].parse().unwrap();
        o.check(head.index() == 0 || base.contains(&head), || format!("{head} is not in the identity MCS"));
        let column: Vec<&str> = TABLE_TWO_QUTRIT[1..].iter().map(|row| row[c]).filter(|s| !s.is_empty()).collect();
        for op in ops(&column) {
            o.check(coset.contains_index(op.index() as u32), || format!("{op} is not in coset {}", COSET_NAMES[c]));
        }
    }

    let bases = bases_for(table.mcs())?;
    let rep = verify_mutually_unbiased(&bases, true);
    o.check(rep.passed() && rep.checks == 45 * 81 * 2, || rep.to_string());
    o.within(start, Duration::from_secs(30));
    Ok(())
}

// ---------------------------------------------------------------- 3

/// Body-count profiles per MCS type, and the totals over all operators.
const PROFILE_ROWS: [(EntanglementClass, [usize; 3]); 3] =
    [(EntanglementClass::S, [6, 12, 8]), (EntanglementClass::SB, [2, 8, 16]), (EntanglementClass::G, [0, 6, 20])];
const BODY_TOTALS: [usize; 3] = [24, 192, 512];

fn criterion_3(o: &mut Outcome) -> qutrit_mub::Result<()> {
    let start = Instant::now();
    let catalog = McsCatalog::new(3)?;
    o.check(catalog.len() == 1120, || format!("{} three-qutrit MCS's, expected 1120", catalog.len()));
    o.check(body_totals(3) == BODY_TOTALS, || format!("body totals {:?}", body_totals(3)));
    let mut exceptions = 0;
    for m in catalog.all() {
        let p = m.profile();
        let hit = PROFILE_ROWS.iter().find(|(_, row)| p == row);
        match hit {
            Some((class, _)) if m.classify()? == *class => {}
            _ => exceptions += 1,
        }
    }
    o.check(exceptions == 0, || format!("{exceptions} MCS's outside the profile table"));

    let mut found = Vec::new();
    for s in 0..=4usize {
        match find_partition_with_structure(&catalog, s, WitnessOptions::default())? {
            WitnessSearch::Found { partition, stats } => {
                let c = partition.structure()?;
                o.check(c.s == s && c.b == 0, || format!("witness for {s}S has structure {c}"));
                o.check(c.g == 16 + 2 * c.s && c.sb + 3 * c.s == 12, || format!("{c} violates the coexistence relations"));
                o.note(format!("{c} in {} nodes", stats.nodes));
                found.push(partition);
            }
            other => {
                o.note(format!("{s}S: {other:?}"));
                o.check(s != 4, || format!("no witness for {s}S"));
            }
        }
    }
    o.check(found.len() >= 2, || format!("only {} witness structures", found.len()));
    for p in &found {
        let reports = verify_all_choices(p)?;
        o.check(reports.len() == 28, || format!("{} identity choices", reports.len()));
        for rep in reports {
            o.check(rep.passed(), || format!("factor theorem fails for identity {}: {:?}", rep.identity, rep.violations));
        }
    }
    o.within(start, Duration::from_secs(600));
    Ok(())
}

// ---------------------------------------------------------------- 4

fn mpow(m: &CycMatrix, k: i64) -> CycMatrix {
    let mut out = CycMatrix::identity(m.rows());
    for _ in 0..k.rem_euclid(3) {
        out = out.mul(m).unwrap();
    }
    out
}

fn w(k: i64) -> CycNum {
    CycNum::omega_pow(k)
}

fn criterion_4(o: &mut Outcome) -> qutrit_mub::Result<()> {
    let (x, z) = (shift_matrix(), clock_matrix());
    let e = |l: i64| mpow(&z, l);
    let rr = |l: i64| x.mul(&mpow(&z, l)).unwrap();
    let ll = |l: i64| rr(l).adjoint();
    let comm = |a: &CycMatrix, b: &CycMatrix| a.mul(b).unwrap().sub(&b.mul(a).unwrap()).unwrap();
    let one = CycNum::one();
    for l in 0..3 {
        for m in 0..3 {
            o.check(e(l).mul(&e(m))? == e(l + m), || format!("E{l} E{m}"));
            o.check(rr(l).mul(&rr(m))? == ll(-l - m).scale(&w(m - l)), || format!("R{l} R{m}"));
            o.check(ll(l).mul(&ll(m))? == rr(-l - m).scale(&w(m - l)), || format!("L{l} L{m}"));
            o.check(comm(&rr(l), &e(m)) == rr(l + m).scale(&(&one - &w(m))), || format!("[R{l}, E{m}]"));
            o.check(comm(&ll(l), &e(m)) == ll(l - m).scale(&(&w(m) - &one)), || format!("[L{l}, E{m}]"));
            o.check(comm(&rr(l), &ll(m)) == e(l - m).scale(&(&w(m - l) - &one)), || format!("[R{l}, L{m}]"));
        }
    }
    let table = qutrit_mub::pauli::verify_ladder_table()?;
    o.check(table.passed(), || table.to_string());

    // Tr(HᵢHⱼ) = 2δᵢⱼ over H and H̄ = S/√3 of the four one-qutrit pairs.
    let pairs: Vec<_> = ["Z", "X", "Y", "V"].iter().map(|s| hermitian_pair(&s.parse().unwrap()).unwrap()).collect();
    for (i, a) in pairs.iter().enumerate() {
        for (j, b) in pairs.iter().enumerate() {
            let d = i64::from(i == j);
            o.check(a.h.trace_of_product(&b.h)? == CycNum::from_int(2 * d), || format!("Tr(H{i} H{j})"));
            o.check(a.h.trace_of_product(&b.hbar_scaled)?.is_zero(), || format!("Tr(H{i} Hbar{j})"));
            // Tr(H̄ᵢH̄ⱼ) = Tr(SᵢSⱼ)/3
            o.check(a.hbar_scaled.trace_of_product(&b.hbar_scaled)? == CycNum::from_int(6 * d), || format!("Tr(Hbar{i} Hbar{j})"));
        }
    }

    // H̄ = (2I - 3H²)/√3 and U = I + (i√3/2) H - (3/2) H².
    let identities = |o: &mut Outcome, u: &PauliOp| -> qutrit_mub::Result<()> {
        let p = hermitian_pair(u)?;
        let d = p.h.rows();
        let id = CycMatrix::identity(d);
        let h2 = p.h.mul(&p.h)?;
        let s = id.scale_rational(&r(2, 1)).sub(&h2.scale_rational(&r(3, 1)))?;
        o.check(s == p.hbar_scaled, || format!("H-bar identity fails for {u}"));
        let um = u.canonical().to_matrix()?;
        let poly = id.add(&p.h.scale(&CycNum::i_sqrt3().scale(&r(1, 2))))?.sub(&h2.scale_rational(&r(3, 2)))?;
        o.check(poly == um, || format!("exponential expansion fails for {u}"));
        o.check(p.h.mul(&h2)? == p.h, || format!("H^3 != H for {u}"));
        Ok(())
    };
    for n in 1..=2 {
        for u in PauliOp::all_canonical(n).skip(1) {
            identities(o, &u)?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let u = PauliOp::from_index(3, rng.gen_range(1..729));
        identities(o, &u)?;
    }
    Ok(())
}

// ---------------------------------------------------------------- 5

fn sorted_labels(e: &qutrit_mub::Expansion) -> Vec<Vec<u8>> {
    let mut v = e.labels();
    v.sort();
    v
}

fn sorted(mut v: Vec<Vec<u8>>) -> Vec<Vec<u8>> {
    v.sort();
    v
}

/// Half of the three-qutrit GHZ subset; the rest are squares.
const GHZ_TABLE: [&str; 13] =
    ["XXX", "YYY", "VVV", "XYV", "YVX", "VXY", "XVY", "YXV", "VYX", "Z2ZI", "Z2IZ", "IZ2Z", "ZZZ"];

fn all_rdms_mixed(b: &BasisSet) -> qutrit_mub::Result<bool> {
    let n = b.n_qutrits();
    let mixed = CycMatrix::identity(3).scale_rational(&r(1, 3));
    for p in b.projectors() {
        for q in 0..n {
            if p.partial_trace(&[q])? != mixed {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn criterion_5(o: &mut Outcome) -> qutrit_mub::Result<()> {
    let zx = product_basis("ZX")?;
    let b5 = BasisSet::from_generator_str("ZX,VZ")?;
    let b8 = BasisSet::from_generator_str("Z2X,YZ2")?;
    for n in 0..3u8 {
        for m in 0..3u8 {
            let e = expand(b5.state(&[n, m]).unwrap().0, &zx)?;
            let want = sorted((0..3).map(|k| vec![k as u8, t3(n as i64 - k)]).collect());
            o.check(sorted_labels(&e) == want && e.has_unit_root_coefficients(), || format!("sum form fails for |{n}{m}>"));
            let e = expand(b8.state(&[n, m]).unwrap().0, &zx)?;
            let want = sorted((0..3).map(|k| vec![k as u8, t3(n as i64 + k)]).collect());
            o.check(sorted_labels(&e) == want && e.has_unit_root_coefficients(), || format!("difference form fails for |{n}{m}>"));
        }
    }
    let zz = product_basis("ZZ")?;
    for b in bases_for(standard_two_qutrit_partition().mcs())? {
        if b.source() == zz.source() {
            continue;
        }
        for psi in b.states() {
            let e = expand(psi, &zz)?;
            o.check(e.len() == 9, || format!("{}-term expansion of a state of {}", e.len(), b.source()));
        }
    }

    let g = ghz_basis()?;
    o.check(names(&g.source().member_ops()) == names(&ghz_table_ops()), || "GHZ subset differs from its table".into());
    let zzz = product_basis("ZZZ")?;
    let xxx = product_basis("XXX")?;
    for (label, psi) in g.labels().iter().zip(g.states()) {
        let (n, l) = (label[0].value() as i64, label[1].value() as i64);
        let e = expand(psi, &zzz)?;
        let want = sorted((0..3).map(|k| vec![k as u8, t3(n + k), t3(l + k)]).collect());
        o.check(sorted_labels(&e) == want && e.has_unit_root_coefficients(), || format!("GHZ form fails for {label:?}"));
        o.check(expand(psi, &xxx)?.len() == 9, || "GHZ state without a nine-term form in S(XXX)".into());
    }
    let gp = BasisSet::from_generator_str("Z2ZI,Z2IZ2,XXX2")?;
    for (label, psi) in gp.labels().iter().zip(gp.states()) {
        let (n, l) = (label[0].value() as i64, label[1].value() as i64);
        let e = expand(psi, &zzz)?;
        let want = sorted((0..3).map(|k| vec![k as u8, t3(n + k), t3(-l - k)]).collect());
        o.check(sorted_labels(&e) == want, || format!("primed GHZ form fails for {label:?}"));
    }
    let mut patterns = BTreeSet::new();
    for (a, b) in [(false, false), (true, false), (false, true), (true, true)] {
        let v = ghz_variant(a, b)?;
        let e = expand(&v.states()[5], &zzz)?;
        o.check(e.len() == 3, || "GHZ variant without a three-term form".into());
        patterns.insert(sorted_labels(&e));
        o.check(all_rdms_mixed(&v)?, || format!("GHZ variant {} has a non-maximally mixed RDM", v.source()));
    }
    o.check(patterns.len() == 4, || format!("{} distinct GHZ sign patterns", patterns.len()));

    let sb = sb_basis(0, 'Z', "ZX,YZ")?;
    o.check(names(sb.source().generators()) == set(&["ZII", "IZX", "IYZ"]), || format!("SB generators {}", sb.source()));
    let zzx = product_basis("ZZX")?;
    for (label, psi) in sb.labels().iter().zip(sb.states()) {
        let (n, l) = (label[0].value(), label[1].value() as i64);
        let e = expand(psi, &zzx)?;
        let want = sorted((0..3).map(|k| vec![n, k as u8, t3(l - k)]).collect());
        o.check(sorted_labels(&e) == want, || format!("SB form fails for {label:?}"));
    }
    let sb2 = sb_basis(1, 'Z', "ZX,YZ")?;
    let zzx2 = product_basis("ZZX")?;
    for psi in sb2.states() {
        let e = expand(psi, &zzx2)?;
        let fixed: BTreeSet<u8> = e.labels().iter().map(|l| l[1]).collect();
        o.check(fixed.len() == 1, || "second index varies in SB[Z2]".into());
    }

    let a = aharonov();
    let e = expand(&a, &g)?;
    let labels: Vec<Vec<u8>> = e.labels().iter().map(|l| digits(l)).collect();
    let pairs_ok = labels.len() == 2
        && labels[0][..2] == [1, 2]
        && labels[1][..2] == [2, 1]
        && labels[0][2] == labels[1][2]
        && e.terms[1].1 == CycNum::from_int(-1);
    o.check(pairs_ok, || format!("singlet decomposition {e}"));
    if pairs_ok && labels[0][2] != 1 {
        o.note(format!(
            "singlet decomposes as |1,2,{m}> - |2,1,{m}>: cyclic-shift label {m} where the printed form has 1",
            m = labels[0][2]
        ));
    }

    o.check(all_rdms_mixed(&g)?, || "GHZ basis state with a non-maximally mixed RDM".into());
    for b in bases_for(standard_two_qutrit_partition().mcs())? {
        if b.source().classify()? == EntanglementClass::B {
            o.check(all_rdms_mixed(&b)?, || format!("Bell basis {} has a non-maximally mixed RDM", b.source()));
        }
    }
    Ok(())
}

fn ghz_table_ops() -> Vec<PauliOp> {
    let half = ops(&GHZ_TABLE);
    half.iter().flat_map(|u| [*u, u.pow(2)]).collect()
}

// ---------------------------------------------------------------- 6

fn three_qutrit_mubs() -> qutrit_mub::Result<Mubs> {
    let catalog = McsCatalog::new(3)?;
    let search = find_partition_with_structure(&catalog, 4, WitnessOptions::default())?;
    Mubs::from_partition(search.partition().expect("witness exists"))
}

fn criterion_6(o: &mut Outcome) -> qutrit_mub::Result<()> {
    let two = Mubs::from_partition(&standard_two_qutrit_partition())?;
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    for i in 0..100 {
        let rho = random_mixture(&two, 5, &mut rng)?;
        let rt = round_trip(&rho, &two)?;
        o.check(rt.exact, || format!("two-qutrit mixture {i} did not round-trip"));
        if i < 10 {
            o.check(reconstruct_direct(&rt.table, &two)? == *rho.matrix(), || format!("direct sum fails for mixture {i}"));
        }
    }
    let three = three_qutrit_mubs()?;
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_602);
    for i in 0..10 {
        let rho = random_mixture(&three, 5, &mut rng)?;
        o.check(round_trip(&rho, &three)?.exact, || format!("three-qutrit mixture {i} did not round-trip"));
    }
    Ok(())
}

// ---------------------------------------------------------------- 7

fn criterion_7(o: &mut Outcome) -> qutrit_mub::Result<()> {
    let mut partitions: Vec<Partition> = enumerate_partitions(1)?;
    partitions.extend(enumerate_partitions(2)?);
    let catalog = McsCatalog::new(3)?;
    for s in 0..=4 {
        if let Some(p) = find_partition_with_structure(&catalog, s, WitnessOptions::default())?.partition() {
            partitions.push(p.clone());
        }
    }
    let mut seen = std::collections::HashSet::new();
    for p in &partitions {
        let n = p.n_qutrits();
        let rep = verify_operator_orthonormality(p.mcs(), n == 1);
        o.check(rep.passed(), || rep.to_string());
        for m in p.mcs() {
            if !seen.insert(m.members().to_vec()) {
                continue;
            }
            let b = BasisSet::from_mcs(m)?;
            let rep = verify_projectors(&b, n <= 2);
            o.check(rep.passed(), || rep.to_string());
            let p0 = &b.projectors()[0];
            o.check(p0.mul(p0)? == *p0, || format!("first projector of {m} is not idempotent"));
            let mut sum = CycMatrix::zeros(b.dim(), b.dim());
            for p in b.projectors() {
                o.check(p.is_hermitian(), || format!("projector of {m} is not Hermitean"));
                sum.add_assign(p)?;
            }
            o.check(sum == CycMatrix::identity(b.dim()), || format!("projectors of {m} are incomplete"));
        }
    }

    let homomorphism = |o: &mut Outcome, a: &PauliOp, b: &PauliOp| -> qutrit_mub::Result<()> {
        let prod = a.multiply(b)?.to_matrix()?;
        o.check(prod == a.to_matrix()?.mul(&b.to_matrix()?)?, || format!("matrix of {a}·{b}"));
        Ok(())
    };
    let phased = |n: usize| -> Vec<PauliOp> {
        PauliOp::all_canonical(n)
            .flat_map(|u| (0..3).map(move |k| u.with_phase(qutrit_mub::Trit::new(k))))
            .collect()
    };
    let one = phased(1);
    for a in &one {
        for b in &one {
            homomorphism(o, a, b)?;
        }
        o.check(a.dagger().to_matrix()? == a.to_matrix()?.adjoint(), || format!("adjoint of {a}"));
    }
    let two: Vec<PauliOp> = PauliOp::all_canonical(2).collect();
    for a in &two {
        for b in &two {
            homomorphism(o, a, b)?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let a = PauliOp::from_index(3, rng.gen_range(0..729)).with_phase(qutrit_mub::Trit::new(rng.gen_range(0..3)));
        let b = PauliOp::from_index(3, rng.gen_range(0..729));
        homomorphism(o, &a, &b)?;
    }
    Ok(())
}

// ----------------------------------------------------------------

fn main() -> ExitCode {
    let criteria: [(&str, Body); 7] = [
        ("one qutrit: census, unique partition, unbiased bases, factor-group layout", criterion_1),
        ("two qutrits: census, 48 partitions of structure 4S+6B in 24 quartets x 2, printed partition unbiased", criterion_2),
        ("three qutrits: census, profile table, witness partitions, factor theorem", criterion_3),
        ("operator algebra: ladder table, observable orthonormality and identities", criterion_4),
        ("states: expansion shapes, GHZ and SB forms, singlet decomposition, reduced states", criterion_5),
        ("tomography: exact round trips, 100 two-qutrit and 10 three-qutrit mixtures", criterion_6),
        ("property suite: projectors, completeness, operator orthonormality, homomorphism", criterion_7),
    ];
    let mut passed = 0;
    for (i, (name, body)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut o = Outcome::default();
        let result = catch_unwind(AssertUnwindSafe(|| body(&mut o)));
        match result {
            Ok(Ok(())) => {}
            Ok(Err(e)) => o.failures.push(format!("error: {e}")),
            Err(_) => o.failures.push("panicked".into()),
        }
        let secs = start.elapsed().as_secs_f64();
        let notes = if o.notes.is_empty() { String::new() } else { format!(" [{}]", o.notes.join("; ")) };
        if o.failures.is_empty() {
            passed += 1;
            println!("criterion {} PASS ({} checks, {secs:.1} s): {name}{notes}", i + 1, o.checks);
        } else {
            let shown: Vec<&str> = o.failures.iter().take(4).map(String::as_str).collect();
            println!(
                "criterion {} FAIL ({} of {} checks failed, {secs:.1} s): {name}: {}{notes}",
                i + 1,
                o.failures.len(),
                o.checks,
                shown.join("; ")
            );
        }
    }
    println!("acceptance: {passed}/{} criteria pass", criteria.len());
    if passed == criteria.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
