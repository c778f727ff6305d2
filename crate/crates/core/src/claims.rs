//! The verification suite behind `conserva verify-paper`.
//!
//! Each claim is checked against the loaded tables. A claim that fails on a
//! table but holds once a registered suspect cell is corrected is reported as
//! a `discrepancy-flag` naming that cell rather than as a failure.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{resolve, unit, Algebra, AlgebraError, BUILTIN_NAMES};
use crate::biderivations::{
    biderivation_space, direct_sum_check, is_biderivation, skew_biderivation_space,
    slices_are_derivations, symmetric_biderivation_space,
};
use crate::bilinear::BilinearMap;
use crate::derivations::{
    centroid, centroid_in_delta_check, delta_derivation_space, derivation_space,
    is_centroid_element, is_delta_derivation, required_samples, scalar_classification,
    DeltaSpace, LocalDecision,
};
use crate::exactnum::{kernel_basis, rank, subspace_equal, RatMatrix, Rational, RowBuilder, SparseEchelon};
use crate::kantor::{
    bracket, build_wn, conservativity_residual, find_associated_f, is_closed_under_product,
    subalgebra, symmetric_subspace, trace_zero_subspace, WnAlgebra,
};
use crate::random::{random_algebra, random_bilinear, random_matrix, random_nilpotent4, random_vector, rng};
use crate::reference::{
    derivation_generators, matching_orientation, suspect_cells_for,
    w2_conservative_standalone_generators,
};

#[derive(Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    DiscrepancyFlag,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::DiscrepancyFlag => "discrepancy-flag",
        })
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub id: String,
    pub paper: String,
    pub status: Status,
    pub expected: String,
    pub computed: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub claims: Vec<Claim>,
}

impl VerificationReport {
    pub fn has_failures(&self) -> bool {
        self.claims.iter().any(|c| c.status == Status::Fail)
    }

    pub fn get(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn count(&self, status: Status) -> usize {
        self.claims.iter().filter(|c| c.status == status).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    fn push(&mut self, id: impl Into<String>, paper: &str, expected: &str, status: Status, computed: String) {
        self.claims.push(Claim {
            id: id.into(),
            paper: paper.to_string(),
            status,
            expected: expected.to_string(),
            computed,
        });
    }
}

/// Result of one check: whether it held, and what was computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub ok: bool,
    pub computed: String,
}

impl Outcome {
    pub fn new(ok: bool, computed: impl Into<String>) -> Self {
        Outcome {
            ok,
            computed: computed.into(),
        }
    }
}

/// Runs a table-dependent check, falling back to the registered suspect
/// cells when it fails.
pub fn check_table(a: &Algebra, table: &str, check: impl Fn(&Algebra) -> Outcome) -> (Status, String) {
    let first = check(a);
    if first.ok {
        return (Status::Pass, first.computed);
    }
    for cell in suspect_cells_for(table) {
        if let Some(fixed) = cell.apply(a) {
            let retry = check(&fixed);
            if retry.ok {
                return (
                    Status::DiscrepancyFlag,
                    format!(
                        "{}; with {}: {}",
                        first.computed,
                        cell.describe(a),
                        retry.computed
                    ),
                );
            }
        }
    }
    (Status::Fail, first.computed)
}

fn half() -> Rational {
    Rational::new(1, 2)
}

fn flat(ms: &[RatMatrix]) -> Vec<Vec<Rational>> {
    ms.iter().map(RatMatrix::flatten).collect()
}

fn is_scalar_span(ms: &[RatMatrix], m: usize) -> bool {
    subspace_equal(&flat(ms), &[RatMatrix::identity(m).flatten()], m * m).expect("same ambient")
}

fn describe_span(ms: &[RatMatrix], m: usize) -> String {
    if is_scalar_span(ms, m) {
        "span{id}".to_string()
    } else {
        format!("dimension {}", ms.len())
    }
}

/// Dimensions and scalar-ness of the solver outputs used to compare algebras
/// without an explicit isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantProfile {
    pub dim: usize,
    pub derivations: usize,
    pub half_derivations_scalar: bool,
    pub centroid_scalar: bool,
    pub biderivations: usize,
}

impl InvariantProfile {
    pub fn of(a: &Algebra) -> Self {
        let m = a.dim();
        InvariantProfile {
            dim: m,
            derivations: derivation_space(a).len(),
            half_derivations_scalar: is_scalar_span(&delta_derivation_space(a, &half()), m),
            centroid_scalar: is_scalar_span(&centroid(a), m),
            biderivations: biderivation_space(a).len(),
        }
    }
}

impl fmt::Display for InvariantProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let span = |s: bool| if s { "span{id}" } else { "not span{id}" };
        write!(
            f,
            "dim {}, dim Der {}, Δ½ {}, Γ {}, dim BDer {}",
            self.dim,
            self.derivations,
            span(self.half_derivations_scalar),
            span(self.centroid_scalar),
            self.biderivations
        )
    }
}

/// Seeded random algebras of dimension 1..=5 with varied sparsity.
pub fn seeded_random_algebras(count: usize, seed: u64) -> Vec<Algebra> {
    let mut r = rng(seed);
    let densities = [0.15, 0.3, 0.6];
    (0..count)
        .map(|i| random_algebra(&mut r, 1 + i % 5, densities[i % densities.len()]))
        .collect()
}

/// Seeded linear maps that are not scalar multiples of the identity: half are
/// dense random matrices, half are `λ·id` with one perturbed entry.
pub fn seeded_nonscalar_maps(m: usize, count: usize, seed: u64) -> Vec<RatMatrix> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let candidate = if out.len() % 2 == 0 {
            random_matrix(&mut r, m, m, 0.8)
        } else {
            let lambda = crate::random::small_rational(&mut r);
            let mut d = RatMatrix::scalar(m, &lambda);
            let i = out.len() % m;
            let j = (out.len() / 2) % m;
            d[(i, j)] += Rational::one();
            d
        };
        if candidate.as_scalar().is_none() {
            out.push(candidate);
        }
    }
    out
}

/// Checks that every linear map passing the local test on the required sample
/// set is scalar, by computing the full space of such maps.
pub fn local_maps_are_scalar(a: &Algebra) -> Outcome {
    let m = a.dim();
    let space = DeltaSpace::new(a, &half());
    let maps = space.local_map_space(&required_samples(m));
    Outcome {
        ok: is_scalar_span(&maps, m),
        computed: format!("local maps on {{eᵢ}} ∪ {{eᵢ+eⱼ}}: {}", describe_span(&maps, m)),
    }
}

/// Runs the seeded non-scalar maps through the local test and re-verifies
/// each counterexample with an independent rank test.
pub fn nonscalar_maps_rejected(a: &Algebra, count: usize, seed: u64) -> Outcome {
    let m = a.dim();
    let space = DeltaSpace::new(a, &half());
    let samples = required_samples(m);
    let mut rejected = 0;
    for d in seeded_nonscalar_maps(m, count, seed) {
        match space.check_local(&d, &samples) {
            Ok(LocalDecision::NotLocal { counterexample }) => {
                let target = d.mul_vec(&counterexample).expect("sized");
                if samples.contains(&counterexample) && !space.reaches(&counterexample, &target) {
                    rejected += 1;
                }
            }
            Ok(LocalDecision::Local { .. }) | Err(_) => {}
        }
    }
    Outcome {
        ok: rejected == count,
        computed: format!("{rejected}/{count} rejected with verified counterexamples"),
    }
}

/// Value tables `(D(e₁), …, D(e_m))` that pass the 2-local test on every pair
/// `(e₁, eⱼ)` must be restrictions of `λ·id`.
pub fn two_local_tables_are_scalar(a: &Algebra) -> Outcome {
    let m = a.dim();
    let space = DeltaSpace::new(a, &half());
    let points: Vec<Vec<Rational>> = (0..m).map(|i| unit(m, i)).collect();
    let pairs: Vec<(usize, usize)> = (0..m).map(|j| (0, j)).collect();
    let tables = space.two_local_value_space(&points, &pairs);
    let scalar_table: Vec<Rational> = points.iter().flatten().cloned().collect();
    let ok = subspace_equal(&tables, &[scalar_table], m * m).expect("same ambient");
    Outcome {
        ok,
        computed: format!(
            "value tables passing on all (e1, ej): dimension {}{}",
            tables.len(),
            if ok { ", all λ·id" } else { "" }
        ),
    }
}

/// Every solver output for `a` satisfies its defining identity exactly, and
/// biderivation slices lie in the derivation algebra.
pub fn solver_outputs_sound(a: &Algebra) -> bool {
    let h = half();
    let one = Rational::one();
    let deltas_ok = delta_derivation_space(a, &h)
        .iter()
        .all(|d| is_delta_derivation(a, d, &h).unwrap_or(false))
        && derivation_space(a)
            .iter()
            .all(|d| is_delta_derivation(a, d, &one).unwrap_or(false));
    let centroid_ok = centroid(a)
        .iter()
        .all(|g| is_centroid_element(a, g).unwrap_or(false));
    let bider = biderivation_space(a);
    let bider_ok = bider
        .iter()
        .chain(&symmetric_biderivation_space(a))
        .chain(&skew_biderivation_space(a))
        .all(|t| is_biderivation(a, t).unwrap_or(false))
        && slices_are_derivations(a, &bider);
    deltas_ok && centroid_ok && bider_ok
}

/// Rank–nullity and kernel soundness on seeded random matrices, with the
/// sparse elimination cross-checked against dense RREF.
pub fn rank_nullity_holds(count: usize, seed: u64) -> bool {
    let mut r = rng(seed);
    (0..count).all(|i| {
        let rows = 1 + i % 7;
        let cols = 1 + (i / 7) % 8;
        let density = [0.2, 0.5, 0.9][i % 3];
        let a = random_matrix(&mut r, rows, cols, density);
        let kernel = kernel_basis(&a);
        let sound = kernel
            .iter()
            .all(|v| a.mul_vec(v).unwrap().iter().all(Rational::is_zero));
        let mut sparse = SparseEchelon::new(cols);
        for row in 0..rows {
            let mut b = RowBuilder::new();
            for (c, x) in a.row(row).iter().enumerate() {
                b.add_ref(c, x);
            }
            sparse.insert(b.finish());
        }
        sound && rank(&a) + kernel.len() == cols && sparse.kernel_basis() == kernel
    })
}

/// Seeded 4-nilpotent algebras of dimension 3..=6.
pub fn seeded_nilpotent4_algebras(count: usize, seed: u64) -> Vec<Algebra> {
    let mut r = rng(seed);
    (0..count).map(|i| random_nilpotent4(&mut r, 3 + i % 4)).collect()
}

fn table_claims(report: &mut VerificationReport, name: &str, a: &Algebra) {
    let m = a.dim();
    let label = match name {
        "W2-conservative" => "W(2)",
        "W2-commutative" => "𝒲₂",
        "S2" => "S₂",
        other => other,
    };

    let (status, computed) = check_table(a, name, |a| {
        let c = scalar_classification(a, &half());
        Outcome::new(
            c.is_scalar,
            format!("dim Δ½ = {}{}", c.dimension, if c.is_scalar { ", span{id}" } else { "" }),
        )
    });
    report.push(
        format!("{}.half-derivations-scalar", name),
        &format!("½-derivations of {label} are d(x) = λx"),
        "span{id}",
        status,
        computed,
    );

    let (status, computed) = check_table(a, name, |a| {
        let g = centroid(a);
        Outcome::new(is_scalar_span(&g, a.dim()), format!("Γ = {}", describe_span(&g, a.dim())))
    });
    report.push(
        format!("{}.centroid-scalar", name),
        &format!("centroid of {label} is {{λ id}}"),
        "span{id}",
        status,
        computed,
    );

    let (status, computed) = check_table(a, name, |a| {
        let d = derivation_space(a).len();
        Outcome::new(d == 2, format!("dim Der = {d}"))
    });
    report.push(
        format!("{}.derivations-dim", name),
        &format!("derivations of {label} form a two-parameter family"),
        "dim Der = 2",
        status,
        computed,
    );

    let generators = derivation_generators(name);
    if let Some(generators) = generators {
        let (status, computed) = check_table(a, name, |a| {
            let der = derivation_space(a);
            match matching_orientation(&der, &generators) {
                Some(o) => Outcome::new(true, format!("span equal ({o})")),
                None => Outcome::new(false, format!("dim Der = {}, span differs in both orientations", der.len())),
            }
        });
        report.push(
            format!("{}.derivations-form", name),
            &format!("derivation matrix form of {label}"),
            "Der = span of the printed generators at (a,b) = (1,0), (0,1)",
            status,
            computed,
        );
    }

    if name == "W2-conservative" {
        let der = derivation_space(a);
        let slice_form = derivation_generators(name).and_then(|g| matching_orientation(&der, &g));
        let (status, computed) = match (matching_orientation(&der, &w2_conservative_standalone_generators()), slice_form) {
            (Some(o), _) => (Status::Pass, format!("span equal ({o})")),
            (None, Some(_)) => (
                Status::DiscrepancyFlag,
                "stand-alone printed matrix differs from Der in both orientations; the slice form printed in the e-basis matches, so the stand-alone matrix is not expressed in the table basis".to_string(),
            ),
            (None, None) => (Status::Fail, "neither printed form matches Der".to_string()),
        };
        report.push(
            "W2-conservative.derivations-standalone-form",
            "stand-alone derivation matrix of W(2)",
            "Der = span of the stand-alone printed generators",
            status,
            computed,
        );
    }

    type Solver = fn(&Algebra) -> Vec<BilinearMap>;
    let spaces: [(&str, &str, Solver); 3] = [
        ("biderivations-zero", "BDer", biderivation_space),
        ("symmetric-biderivations-zero", "BDer₊", symmetric_biderivation_space),
        ("skew-biderivations-zero", "BDer₋", skew_biderivation_space),
    ];
    for (suffix, symbol, solver) in spaces {
        let (status, computed) = check_table(a, name, |a| {
            let d = solver(a).len();
            Outcome::new(d == 0, format!("dim {symbol} = {d}"))
        });
        report.push(
            format!("{}.{suffix}", name),
            &format!("{symbol}({label}) = {{0}}"),
            &format!("dim {symbol} = 0"),
            status,
            computed,
        );
    }

    let (status, computed) = check_table(a, name, |a| {
        let ok = direct_sum_check(a);
        Outcome::new(ok, if ok { "BDer = BDer₊ ⊕ BDer₋" } else { "decomposition fails" })
    });
    report.push(
        format!("{}.direct-sum", name),
        &format!("BDer({label}) = BDer₊ ⊕ BDer₋"),
        "direct sum",
        status,
        computed,
    );

    let (status, computed) = check_table(a, name, |a| {
        let o = local_maps_are_scalar(a);
        Outcome::new(o.ok, o.computed)
    });
    report.push(
        format!("{}.local-scalar", name),
        &format!("local ½-derivations of {label} are ½-derivations"),
        "only λ·id passes on the required samples",
        status,
        computed,
    );

    let seed = 0x5eed_0000 + m as u64;
    let (status, computed) = check_table(a, name, |a| {
        let o = nonscalar_maps_rejected(a, 50, seed);
        Outcome::new(o.ok, o.computed)
    });
    report.push(
        format!("{}.local-rejects-nonscalar", name),
        &format!("local ½-derivations of {label} are ½-derivations"),
        "50/50 non-scalar maps rejected",
        status,
        computed,
    );

    let (status, computed) = check_table(a, name, |a| {
        let o = two_local_tables_are_scalar(a);
        Outcome::new(o.ok, o.computed)
    });
    report.push(
        format!("{}.two-local-scalar", name),
        &format!("2-local ½-derivations of {label} are ½-derivations"),
        "only λ·id passes on all (e1, ej)",
        status,
        computed,
    );

    let (status, computed) = check_table(a, name, |a| match find_associated_f(a) {
        Ok(Some(f)) => {
            let residual = conservativity_residual(a, &f).expect("sized");
            Outcome::new(residual.is_zero(), format!("F found, max residual {residual}"))
        }
        Ok(None) => Outcome::new(false, "no associated multiplication F"),
        Err(e) => Outcome::new(false, e.to_string()),
    });
    report.push(
        format!("{}.conservative", name),
        &format!("{label} is conservative"),
        "F exists, zero residual on all basis quadruples",
        status,
        computed,
    );
}

fn kantor_claims(report: &mut VerificationReport, tables: &[(String, Algebra)]) {
    let e = vec![Rational::one(), Rational::zero()];
    let w: WnAlgebra = build_wn(2, &e).expect("v1 is nonzero");
    let sym = symmetric_subspace(&w);
    let tz = trace_zero_subspace(&w);
    let dims = (w.algebra().dim(), sym.len(), tz.len());
    report.push(
        "kantor.dimensions",
        "dimensions of W(2), 𝒲₂ and S₂",
        "8, 6, 4",
        if dims == (8, 6, 4) { Status::Pass } else { Status::Fail },
        format!("{}, {}, {}", dims.0, dims.1, dims.2),
    );

    let closed_sym = is_closed_under_product(&w, &sym).unwrap_or(false);
    let closed_tz = is_closed_under_product(&w, &tz).unwrap_or(false);
    report.push(
        "kantor.closure",
        "𝒲₂ and S₂ are subalgebras of W(2)",
        "both closed under the Kantor product",
        if closed_sym && closed_tz { Status::Pass } else { Status::Fail },
        format!("symmetric closed: {closed_sym}, trace-zero closed: {closed_tz}"),
    );

    let mut r = rng(0xb4ac);
    let mut bracket_ok = 0;
    for i in 0..100 {
        let n = 1 + i % 3;
        let map = random_bilinear(&mut r, n, 0.6);
        if bracket(&RatMatrix::identity(n), &map).ok() == Some(map.scale(&Rational::from(-1))) {
            bracket_ok += 1;
        }
    }
    report.push(
        "kantor.bracket-identity",
        "bracket definition",
        "[id, N] = -N for 100/100 random N",
        if bracket_ok == 100 { Status::Pass } else { Status::Fail },
        format!("{bracket_ok}/100"),
    );

    // Bilinear expansion agrees with direct Kantor products of random elements.
    let mut consistent = 0;
    for _ in 0..20 {
        let x = random_vector(&mut r, 8);
        let y = random_vector(&mut r, 8);
        let via_table = w.algebra().multiply(&x, &y).expect("sized");
        let mx = BilinearMap::from_flat(2, x).expect("sized");
        let my = BilinearMap::from_flat(2, y).expect("sized");
        if w.product(&mx, &my).map(|p| p.flatten()).ok() == Some(via_table) {
            consistent += 1;
        }
    }
    report.push(
        "kantor.structure-consistency",
        "Kantor product M·N = [L_M e, N]",
        "20/20 random products agree with the structure constants",
        if consistent == 20 { Status::Pass } else { Status::Fail },
        format!("{consistent}/20"),
    );

    let constructed: [(&str, &str, Option<Algebra>); 3] = [
        ("W2-conservative", "kantor.profile-w2", Some(w.algebra().clone())),
        (
            "W2-commutative",
            "kantor.profile-commutative",
            subalgebra(&w, &sym, "W2-commutative (constructed)", "x").ok().flatten(),
        ),
        (
            "S2",
            "kantor.profile-trace-zero",
            subalgebra(&w, &tz, "S2 (constructed)", "y").ok().flatten(),
        ),
    ];
    for (table_name, id, built) in constructed {
        let Some((_, table)) = tables.iter().find(|(n, _)| n == table_name) else {
            continue;
        };
        let Some(built) = built else {
            report.push(id, "invariant profile", "constructed subalgebra", Status::Fail, "subspace not closed".into());
            continue;
        };
        let built_profile = InvariantProfile::of(&built);
        let (status, computed) = check_table(table, table_name, |t| {
            let p = InvariantProfile::of(t);
            Outcome::new(p == built_profile, format!("table: {p}"))
        });
        // A mismatch is a diagnostic against the table, never a suite failure.
        let status = if status == Status::Fail { Status::DiscrepancyFlag } else { status };
        report.push(
            id,
            &format!("constructed algebra matches the {table_name} table"),
            &format!("constructed: {built_profile}"),
            status,
            computed,
        );
    }
}

fn global_claims(report: &mut VerificationReport) {
    let randoms = seeded_random_algebras(100, 0xc0ffee);

    let inside = randoms.iter().filter(|a| centroid_in_delta_check(a)).count();
    report.push(
        "random.centroid-in-half-derivations",
        "Γ(A) ⊆ Δ(A)",
        "100/100 random algebras",
        if inside == 100 { Status::Pass } else { Status::Fail },
        format!("{inside}/100"),
    );

    let mut zero_ok = Vec::new();
    for m in 2..=4 {
        let a = Algebra::zero_product(m);
        let dims = (
            biderivation_space(&a).len(),
            symmetric_biderivation_space(&a).len(),
            skew_biderivation_space(&a).len(),
        );
        let expected = (m * m * m, m * m * (m + 1) / 2, m * m * (m - 1) / 2);
        zero_ok.push((m, dims == expected && direct_sum_check(&a), dims));
    }
    report.push(
        "zero.direct-sum",
        "BDer = BDer₊ ⊕ BDer₋",
        "m³ = m²(m+1)/2 + m²(m-1)/2 for m = 2, 3, 4",
        if zero_ok.iter().all(|(_, ok, _)| *ok) { Status::Pass } else { Status::Fail },
        zero_ok
            .iter()
            .map(|(m, _, (a, b, c))| format!("m={m}: {a} = {b} + {c}"))
            .collect::<Vec<_>>()
            .join("; "),
    );

    let sums = randoms.iter().filter(|a| direct_sum_check(a)).count();
    let nontrivial = randoms.iter().filter(|a| !biderivation_space(a).is_empty()).count();
    report.push(
        "random.direct-sum",
        "BDer = BDer₊ ⊕ BDer₋",
        "100/100 random algebras",
        if sums == 100 { Status::Pass } else { Status::Fail },
        format!("{sums}/100 ({nontrivial} with nonzero BDer)"),
    );

    let nil = seeded_nilpotent4_algebras(20, 0x4a11);
    let zero_f_ok = nil
        .iter()
        .filter(|a| {
            conservativity_residual(a, &BilinearMap::zero(a.dim()))
                .map(|r| r.is_zero())
                .unwrap_or(false)
        })
        .count();
    report.push(
        "conservative.nilpotent4-zero-f",
        "every 4-nilpotent algebra is conservative with F = 0",
        "F = 0 certifies 20/20 generated 4-nilpotent algebras",
        if zero_f_ok == 20 { Status::Pass } else { Status::Fail },
        format!("{zero_f_ok}/20"),
    );

    let sound = randoms.iter().take(25).filter(|a| solver_outputs_sound(a)).count();
    report.push(
        "soundness.random-residuals",
        "defining identities",
        "every solver output on 25 random algebras has zero residual",
        if sound == 25 { Status::Pass } else { Status::Fail },
        format!("{sound}/25"),
    );

    let ok = rank_nullity_holds(200, 0x7a4c);
    report.push(
        "soundness.rank-nullity",
        "rank–nullity",
        "200/200 random matrices",
        if ok { Status::Pass } else { Status::Fail },
        if ok { "200/200".to_string() } else { "violated".to_string() },
    );
}

/// Runs every claim. Tables are the built-ins unless `algebra_dir` supplies
/// `<name>.json` replacements.
pub fn verify_all(algebra_dir: Option<&Path>) -> Result<VerificationReport, AlgebraError> {
    let tables: Vec<(String, Algebra)> = BUILTIN_NAMES
        .iter()
        .map(|name| resolve(name, algebra_dir).map(|a| (name.to_string(), a)))
        .collect::<Result<_, _>>()?;
    let mut report = VerificationReport::default();
    for (name, a) in &tables {
        table_claims(&mut report, name, a);
        let sound = solver_outputs_sound(a);
        report.push(
            format!("{name}.solver-residuals"),
            "defining identities",
            "every solver output has zero residual",
            if sound { Status::Pass } else { Status::Fail },
            if sound { "all zero" } else { "nonzero residual" }.to_string(),
        );
    }
    kantor_claims(&mut report, &tables);
    global_claims(&mut report);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_serialises_kebab_case() {
        assert_eq!(serde_json::to_string(&Status::DiscrepancyFlag).unwrap(), "\"discrepancy-flag\"");
        assert_eq!(serde_json::to_string(&Status::Pass).unwrap(), "\"pass\"");
    }

    #[test]
    fn nonscalar_maps_are_nonscalar() {
        let maps = seeded_nonscalar_maps(4, 50, 1);
        assert_eq!(maps.len(), 50);
        assert!(maps.iter().all(|d| d.as_scalar().is_none()));
    }

    #[test]
    fn table_status_uses_suspect_cells() {
        let s2 = crate::algebra::builtin("S2").unwrap();
        let (status, computed) = check_table(&s2, "S2", |a| {
            let d = derivation_space(a).len();
            Outcome::new(d == 2, format!("dim Der = {d}"))
        });
        assert_eq!(status, Status::DiscrepancyFlag);
        assert!(computed.contains("z2·z2"), "{computed}");
    }
}
