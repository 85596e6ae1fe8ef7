//! Named verification suites. Each suite returns report lines and never
//! panics on a failed claim; guard violations come back as errors.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::autgroups::{
    column_permutations, extension_checks, grassmann_aut_generators, in_affine_coordinates,
    order_checks, paut_affine_generators, point_permutations, predicted_orders, schubert_aut_check,
    strata_preservation_check,
};
use crate::codes::{
    affine_grassmann_code, codes_equivalent, grassmann_code_from, is_permutation_automorphism,
    paut_brute_force, random_code, schubert_code_from, subcode_weight, Isometry, LinearCode,
};
use crate::error::{guard, Error, Result};
use crate::exterior::{
    compound_matrix, hodge_star_matrix, interior_mult, multi_index_list, tilde_star, wedge,
    ExteriorVector,
};
use crate::gf::{Field, FieldSpec};
use crate::grassgeo::{
    all_lines, enumerate_subspaces, gaussian_binomial, line_points, max_linear_grassmannian,
    max_linear_schubert, max_linear_w1, maximal_linear_subsets, pi_beta, pi_delta,
    scan_projective_lines, stratum, tilde_pi_beta, tilde_pi_delta, w0_minus, w1_plus, Grassmannian,
    LinearPiece, PieceKind,
};
use crate::incidence::chow_oracle;
use crate::linalg::{Matrix, SemilinearMap};
use crate::perm::Permutation;
use crate::report::{params, Check};

/// Largest Grassmannian searched for maximal linear subsets.
pub const MAX_MAXLIN_POINTS: u128 = 200;

/// Fields used by the kernel suite.
pub const KERNEL_FIELDS: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Hodge,
    Kernel,
    Maxlin,
    Strata,
    Chow,
    Orders,
    Paut,
    Macwilliams,
    Schubert,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Hodge,
        Suite::Kernel,
        Suite::Maxlin,
        Suite::Strata,
        Suite::Chow,
        Suite::Orders,
        Suite::Paut,
        Suite::Macwilliams,
        Suite::Schubert,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Hodge => "hodge",
            Suite::Kernel => "kernel",
            Suite::Maxlin => "maxlin",
            Suite::Strata => "strata",
            Suite::Chow => "chow",
            Suite::Orders => "orders",
            Suite::Paut => "paut",
            Suite::Macwilliams => "macwilliams",
            Suite::Schubert => "schubert",
        }
    }

    /// Parses a comma-separated list; "all" expands to every suite.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        let mut out = BTreeSet::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                out.extend(Suite::ALL);
            } else {
                out.insert(part.parse()?);
            }
        }
        if out.is_empty() {
            return Err(Error::Parse("empty suite list".into()));
        }
        Ok(out.into_iter().collect())
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite '{s}'")))
    }
}

/// Runs one suite at (ℓ, m, q). `seed` drives every random choice.
pub fn run_suite(suite: Suite, l: usize, m: usize, field: &Field, seed: u64) -> Result<Vec<Check>> {
    if l < 2 || l >= m {
        return Err(Error::InvalidParameters(format!(
            "need 1 < l < m, got l={l}, m={m}"
        )));
    }
    match suite {
        Suite::Hodge => hodge_suite(l, m, field, seed),
        Suite::Kernel => kernel_suite(l, m),
        Suite::Maxlin => maxlin_suite(l, m, field),
        Suite::Strata => strata_preservation_check(l, m, field),
        Suite::Chow => chow_suite(l, m, field),
        Suite::Orders => {
            let mut out = order_checks(l, m, field)?;
            out.extend(extension_checks(l, m, field)?);
            Ok(out)
        }
        Suite::Paut => paut_suite(l, m, field, seed),
        Suite::Macwilliams => macwilliams_suite(l, m, field, seed),
        Suite::Schubert => schubert_aut_check(l, m, field, seed),
    }
}

/// Runs the suites in the given order and concatenates their lines.
pub fn run_suites(
    suites: &[Suite],
    l: usize,
    m: usize,
    field: &Field,
    seed: u64,
) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for &s in suites {
        out.extend(run_suite(s, l, m, field, seed)?);
    }
    Ok(out)
}

/// ∗ identities: squares, conjugation of compounds, and the contraction rule.
pub fn hodge_suite(l: usize, m: usize, field: &Field, seed: u64) -> Result<Vec<Check>> {
    let pr = params(l, m, field.q());
    let mut out = Vec::new();
    let star = hodge_star_matrix(field, l, m)?;
    let back = hodge_star_matrix(field, m - l, m)?;
    let sign = if (l * (m - l)) % 2 == 1 {
        field.neg(1)
    } else {
        1
    };
    let k = star.cols();
    let square = back.mul(&star);
    out.push(Check::holds(
        "star_squared",
        pr.clone(),
        square == Matrix::scalar(field, k, sign),
    ));

    let tilde = if m == 2 * l {
        Some(tilde_star(field, l, m)?)
    } else {
        None
    };
    if let Some(t) = &tilde {
        out.push(Check::holds(
            "tilde_star_squared",
            pr.clone(),
            t.mul(t).is_identity(),
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples = 100;
    let star_inv = star.inverse()?;
    let tilde_inv = tilde.as_ref().map(|t| t.inverse()).transpose()?;
    let (mut conj_ok, mut tilde_ok) = (0, 0);
    for _ in 0..samples {
        let a = Matrix::random_invertible(field, m, &mut rng);
        let d = a.det()?;
        let lhs = star.mul(&compound_matrix(&a, l)?).mul(&star_inv);
        let rhs = compound_matrix(&a.inverse_transpose()?, m - l)?.scale(d);
        conj_ok += usize::from(lhs == rhs);
        if let (Some(t), Some(ti)) = (&tilde, &tilde_inv) {
            let lhs = t.mul(&compound_matrix(&a, l)?).mul(ti);
            let rhs = compound_matrix(&a.tilde_inverse_transpose()?, l)?.scale(d);
            tilde_ok += usize::from(lhs == rhs);
        }
    }
    out.push(Check::new("star_conjugation", pr.clone(), samples, conj_ok));
    if tilde.is_some() {
        out.push(Check::new(
            "tilde_star_conjugation",
            pr.clone(),
            samples,
            tilde_ok,
        ));
    }

    // ∗_ℓ(β ∧ e_i) = ι_{e^i}(∗_{ℓ-1} β) on basis β
    let lower = multi_index_list(l - 1, m)?;
    let star_lower = if l >= 2 {
        Some(hodge_star_matrix(field, l - 1, m)?)
    } else {
        None
    };
    if let Some(sl) = star_lower {
        let mut pairs = 0;
        let mut ok = 0;
        for idx in &lower {
            let beta = ExteriorVector::basis(field, m, idx)?;
            for i in 0..m {
                let mut v = vec![0u32; m];
                v[i] = 1;
                let lhs_in = wedge(&beta, &ExteriorVector::from_vector(field, &v))?;
                let lhs = star.mul_vec(&lhs_in.coords);
                let starred =
                    ExteriorVector::from_coords(field, m - l + 1, m, sl.mul_vec(&beta.coords))?;
                let rhs = interior_mult(&v, &starred)?;
                pairs += 1;
                ok += usize::from(lhs == rhs.coords);
            }
        }
        out.push(Check::new("contraction", pr, pairs, ok));
    }
    Ok(out)
}

/// ∧^ℓ(cI) = I exactly when c^ℓ = 1, for every c in every field with q ≤ 9.
pub fn kernel_suite(l: usize, m: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for q in KERNEL_FIELDS {
        let field = FieldSpec::from_order(q)?;
        let pr = params(l, m, field.q());
        let mut law = true;
        let mut trivial = 0u64;
        for c in field.nonzero() {
            let w = compound_matrix(&Matrix::scalar(&field, m, c), l)?;
            let root = field.pow(c, l as i64)? == 1;
            law &= w.is_identity() == root;
            trivial += u64::from(w.is_identity());
        }
        out.push(Check::holds("kernel_law", pr.clone(), law));
        out.push(Check::new(
            "kernel_count",
            pr,
            gcd(l as u64, q - 1),
            trivial,
        ));
    }
    Ok(out)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Number of r-subspaces of F_q^m meeting a fixed s-subspace in dimension i.
pub fn meeting_count(m: u32, s: u32, r: u32, i: u32, q: u64) -> u128 {
    if i > s || i > r || r - i > m - s {
        return 0;
    }
    (q as u128).pow((r - i) * (s - i))
        * gaussian_binomial(s, i, q)
        * gaussian_binomial(m - s, r - i, q)
}

fn family_summary(pieces: &[BTreeSet<usize>]) -> String {
    format!("{} pieces", pieces.len())
}

fn compare_families(
    id: &str,
    pr: &str,
    listed: Vec<BTreeSet<usize>>,
    brute: Vec<BTreeSet<usize>>,
) -> Check {
    let listed: BTreeSet<_> = listed.into_iter().collect();
    let brute_set: BTreeSet<_> = brute.iter().cloned().collect();
    let predicted = format!("{} pieces", listed.len());
    let observed = if listed == brute_set {
        predicted.clone()
    } else {
        format!(
            "{}; {} shared",
            family_summary(&brute),
            listed.intersection(&brute_set).count()
        )
    };
    Check::new(id, pr, predicted, observed)
}

fn pieces_of(list: &[LinearPiece], kind: PieceKind) -> Vec<&LinearPiece> {
    list.iter().filter(|p| p.kind == kind).collect()
}

fn distinct_sets(pieces: &[&LinearPiece]) -> bool {
    pieces
        .iter()
        .map(|p| &p.points)
        .collect::<BTreeSet<_>>()
        .len()
        == pieces.len()
}

/// Maximal linear subspaces of G, Ω and W_1 by brute force against the
/// listed families, with the intersection rules and line facts around them.
pub fn maxlin_suite(l: usize, m: usize, field: &Field) -> Result<Vec<Check>> {
    let q = field.q() as u64;
    guard(
        "maximal-linear search points",
        gaussian_binomial(m as u32, l as u32, q),
        MAX_MAXLIN_POINTS,
    )?;
    let g = Grassmannian::new(l, m, field)?;
    let pr = params(l, m, field.q());
    let mut out = Vec::new();
    let all: BTreeSet<usize> = (0..g.len()).collect();
    let omega = g.omega_indices();
    let w1 = g.stratum_indices(1);

    let listed_g = max_linear_grassmannian(&g)?;
    let listed_o = max_linear_schubert(&g)?;
    let listed_w = max_linear_w1(&g)?;
    let sets = |v: &[LinearPiece]| v.iter().map(|p| p.points.clone()).collect::<Vec<_>>();
    out.push(compare_families(
        "maxlin_grassmannian",
        &pr,
        sets(&listed_g),
        maximal_linear_subsets(&g, &all),
    ));
    out.push(compare_families(
        "maxlin_schubert",
        &pr,
        sets(&listed_o),
        maximal_linear_subsets(&g, &omega),
    ));
    out.push(compare_families(
        "maxlin_w1",
        &pr,
        sets(&listed_w),
        maximal_linear_subsets(&g, &w1),
    ));

    // family sizes and dimensions in Ω
    let (mm, s, ll) = (m as u32, (m - l) as u32, l as u32);
    let sizes = [
        (1..=ll - 1)
            .map(|i| meeting_count(mm, s, ll - 1, i, q))
            .sum::<u128>(),
        (2..=ll + 1)
            .map(|i| meeting_count(mm, s, ll + 1, i, q))
            .sum::<u128>(),
        meeting_count(mm, s, ll - 1, 0, q),
        meeting_count(mm, s, ll + 1, 1, q),
    ];
    let dims = [m - l, l, m - l - 1, l - 1];
    let kinds = [
        PieceKind::PiBeta,
        PieceKind::PiDelta,
        PieceKind::TildePiBeta,
        PieceKind::TildePiDelta,
    ];
    let join = |v: Vec<String>| v.join("/");
    let observed_sizes = join(
        kinds
            .iter()
            .map(|&k| pieces_of(&listed_o, k).len().to_string())
            .collect(),
    );
    out.push(Check::new(
        "schubert_family_sizes",
        pr.clone(),
        join(sizes.iter().map(u128::to_string).collect()),
        observed_sizes,
    ));
    let observed_dims = join(
        kinds
            .iter()
            .map(|&k| {
                let d: BTreeSet<String> = pieces_of(&listed_o, k)
                    .iter()
                    .map(|p| {
                        p.projective_dim(field.q())
                            .map_or("?".into(), |d| d.to_string())
                    })
                    .collect();
                d.into_iter().collect::<Vec<_>>().join("|")
            })
            .collect(),
    );
    out.push(Check::new(
        "schubert_family_dims",
        pr.clone(),
        join(dims.iter().map(usize::to_string).collect()),
        observed_dims,
    ));
    let injective = kinds
        .iter()
        .all(|&k| distinct_sets(&pieces_of(&listed_o, k)))
        && kinds
            .iter()
            .all(|&k| distinct_sets(&pieces_of(&listed_g, k)));
    out.push(Check::holds("families_injective", pr.clone(), injective));
    let tb: BTreeSet<_> = pieces_of(&listed_w, PieceKind::TildePiBeta)
        .iter()
        .map(|p| p.points.clone())
        .collect();
    let td: BTreeSet<_> = pieces_of(&listed_w, PieceKind::TildePiDelta)
        .iter()
        .map(|p| p.points.clone())
        .collect();
    out.push(Check::holds(
        "tilde_families_disjoint",
        pr.clone(),
        tb.is_disjoint(&td),
    ));

    // π_β ∩ π^δ is a line exactly when β ⊂ δ
    let betas = enumerate_subspaces(field, l - 1, m)?;
    let deltas = enumerate_subspaces(field, l + 1, m)?;
    let line_size = q as usize + 1;
    let mut meet_ok = true;
    let pb: Vec<LinearPiece> = betas
        .iter()
        .map(|b| pi_beta(&g, b))
        .collect::<Result<_>>()?;
    let pd: Vec<LinearPiece> = deltas
        .iter()
        .map(|d| pi_delta(&g, d))
        .collect::<Result<_>>()?;
    for (b, x) in betas.iter().zip(&pb) {
        for (d, y) in deltas.iter().zip(&pd) {
            let n = x.points.intersection(&y.points).count();
            meet_ok &= if d.contains(b) {
                n == line_size
            } else {
                n == 0
            };
        }
    }
    out.push(Check::holds("pi_beta_meets_pi_delta", pr.clone(), meet_ok));

    out.extend(w1_intersection_checks(&g, &pr)?);

    // lines of P(∧^ℓ) meeting G in three or more points lie in G, and those are the listed lines
    let scan = scan_projective_lines(&g);
    let lines: BTreeSet<BTreeSet<usize>> = g.line_sets()?.into_iter().collect();
    out.push(Check::new("secant_lines_bad", pr.clone(), 0, scan.bad));
    out.push(Check::holds(
        "contained_lines_are_grassmann_lines",
        pr.clone(),
        scan.contained == lines,
    ));

    // a line π_β^δ through a big-cell point meets Ω in the single point π̃_β ∩ π̃^δ
    let first = m - l;
    let mut through_ok = true;
    let mut through = 0;
    for line in all_lines(l, m, field)? {
        let pts = g.indices(&line_points(&line)?);
        if !pts.iter().any(|&p| g.strata[p] == 0) {
            continue;
        }
        through += 1;
        let shape =
            line.beta.meet_dim_with_first(first) == 0 && line.delta.meet_dim_with_first(first) == 1;
        through_ok &= shape;
        if shape {
            let cap: BTreeSet<usize> = tilde_pi_beta(&g, &line.beta)?
                .points
                .intersection(&tilde_pi_delta(&g, &line.delta)?.points)
                .copied()
                .collect();
            let in_omega: BTreeSet<usize> =
                pts.iter().copied().filter(|p| omega.contains(p)).collect();
            through_ok &= cap.len() == 1 && in_omega == cap;
        }
    }
    out.push(Check::holds(
        "big_cell_lines",
        pr,
        through_ok && through > 0,
    ));
    Ok(out)
}

/// Intersections of the π̃ pieces, the two W_1 covers, and the rules for
/// lines in Ω joining two pieces.
fn w1_intersection_checks(g: &Grassmannian, pr: &str) -> Result<Vec<Check>> {
    let (l, m) = (g.l, g.m);
    let mut out = Vec::new();
    let w1 = g.stratum_indices(1);
    let omega = g.omega_indices();
    let bm = w0_minus(g)?;
    let dp = w1_plus(g)?;
    let tb: Vec<LinearPiece> = bm
        .iter()
        .map(|b| tilde_pi_beta(g, b))
        .collect::<Result<_>>()?;
    let td: Vec<LinearPiece> = dp
        .iter()
        .map(|d| tilde_pi_delta(g, d))
        .collect::<Result<_>>()?;
    let cap = |x: &LinearPiece, y: &LinearPiece| -> BTreeSet<usize> {
        x.points.intersection(&y.points).copied().collect()
    };
    let single = |p: Option<usize>| -> BTreeSet<usize> { p.into_iter().collect() };

    // (i) π̃^δ ∩ π̃^δ′
    let mut ok = true;
    for i in 0..dp.len() {
        for j in i + 1..dp.len() {
            let meet = dp[i].intersect(&dp[j]);
            let expect = if meet.dim() == l && stratum(&meet, l, m) == 1 {
                single(g.index_of(&meet))
            } else {
                BTreeSet::new()
            };
            ok &= cap(&td[i], &td[j]) == expect;
        }
    }
    out.push(Check::holds("w1_cap_delta_delta", pr, ok));

    // (ii) π̃_β ∩ π̃^δ
    let v = g.v_fixed();
    let mut ok = true;
    for (b, x) in bm.iter().zip(&tb) {
        for (d, y) in dp.iter().zip(&td) {
            let expect = if d.contains(b) {
                single(g.index_of(&b.sum(&d.intersect(&v))))
            } else {
                BTreeSet::new()
            };
            ok &= cap(x, y) == expect;
        }
    }
    out.push(Check::holds("w1_cap_beta_delta", pr, ok));

    // (iii) π̃_β ∩ π̃_β′
    let mut ok = true;
    for i in 0..bm.len() {
        for j in i + 1..bm.len() {
            let join = bm[i].sum(&bm[j]);
            let expect = if join.dim() == l && stratum(&join, l, m) == 1 {
                single(g.index_of(&join))
            } else {
                BTreeSet::new()
            };
            ok &= cap(&tb[i], &tb[j]) == expect;
        }
    }
    out.push(Check::holds("w1_cap_beta_beta", pr, ok));

    let union = |v: &[LinearPiece]| -> BTreeSet<usize> {
        v.iter().flat_map(|p| p.points.iter().copied()).collect()
    };
    out.push(Check::holds("w1_union_beta", pr, union(&tb) == w1));
    out.push(Check::holds("w1_union_delta", pr, union(&td) == w1));

    // lines of Ω, by point, for the joining-line rules
    let omega_lines: Vec<BTreeSet<usize>> = g
        .line_sets()?
        .into_iter()
        .filter(|s| s.is_subset(&omega))
        .collect();
    let mut by_point: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, s) in omega_lines.iter().enumerate() {
        for &p in s {
            by_point.entry(p).or_default().push(i);
        }
    }
    let joining = |x: &BTreeSet<usize>, y: &BTreeSet<usize>| -> BTreeSet<usize> {
        let mut found = BTreeSet::new();
        for &a in x {
            for &li in by_point.get(&a).map(Vec::as_slice).unwrap_or(&[]) {
                let line = &omega_lines[li];
                if line.iter().any(|&b| b != a && y.contains(&b)) {
                    found.insert(li);
                }
            }
        }
        found
    };

    // (i) lines between meeting π̃_β and π̃^δ pass through the meet and stay in one piece
    let mut ok = true;
    let mut pairs = 0;
    for x in &tb {
        for y in &td {
            let c = cap(x, y);
            if c.is_empty() {
                continue;
            }
            pairs += 1;
            for li in joining(&x.points, &y.points) {
                let line = &omega_lines[li];
                ok &= c.is_subset(line) && (line.is_subset(&x.points) || line.is_subset(&y.points));
            }
        }
    }
    out.push(Check::holds(
        "joining_lines_beta_delta",
        pr,
        ok && pairs > 0,
    ));

    // (ii) meeting π̃^δ, π̃^δ′ are joined by a line of Ω leaving W_1
    let mut ok = true;
    let mut pairs = 0;
    for i in 0..td.len() {
        for j in i + 1..td.len() {
            if cap(&td[i], &td[j]).is_empty() {
                continue;
            }
            pairs += 1;
            ok &= joining(&td[i].points, &td[j].points)
                .iter()
                .any(|&li| !omega_lines[li].is_subset(&w1));
        }
    }
    out.push(Check::holds(
        "joining_lines_delta_delta",
        pr,
        ok && pairs > 0,
    ));
    Ok(out)
}

/// Automorphisms of the point-line geometry of G against |PΓL(m)|·(2),
/// with every constructed generator located in the computed group.
pub fn chow_suite(l: usize, m: usize, field: &Field) -> Result<Vec<Check>> {
    let pr = params(l, m, field.q());
    let chow = chow_oracle(l, m, field)?;
    let pred = predicted_orders(l, m, field);
    let mut out = vec![Check::new("chow", pr.clone(), pred.aut_system, chow.order)];
    let gens = grassmann_aut_generators(l, m, field)?;
    let found = gens
        .maps()
        .iter()
        .filter(|s| {
            chow.geometry
                .induced_permutation(s)
                .is_some_and(|p| chow.group.contains(&p))
        })
        .count();
    out.push(Check::new(
        "chow_generators",
        pr.clone(),
        gens.generators.len(),
        found,
    ));

    if m == 2 * l {
        // ∗̃ exchanges {π_β} and {π^δ}
        let g = &chow.geometry.grassmannian;
        let t = SemilinearMap::linear(tilde_star(field, l, m)?)?;
        let p = &point_permutations(g, &[t])?[0];
        let image = |x: &LinearPiece| -> BTreeSet<usize> {
            x.points
                .iter()
                .map(|&i| p.apply(i as u32) as usize)
                .collect()
        };
        let list = max_linear_grassmannian(g)?;
        let betas: BTreeSet<_> = pieces_of(&list, PieceKind::PiBeta)
            .iter()
            .map(|x| x.points.clone())
            .collect();
        let deltas: BTreeSet<_> = pieces_of(&list, PieceKind::PiDelta)
            .iter()
            .map(|x| x.points.clone())
            .collect();
        let swapped = pieces_of(&list, PieceKind::PiBeta)
            .iter()
            .all(|x| deltas.contains(&image(x)))
            && pieces_of(&list, PieceKind::PiDelta)
                .iter()
                .all(|x| betas.contains(&image(x)));
        out.push(Check::holds("tilde_star_swaps_families", pr, swapped));
    }
    Ok(out)
}

/// Brute-force PAut of the affine code against the prediction and the
/// group generated by the constructed permutations.
pub fn paut_suite(l: usize, m: usize, field: &Field, seed: u64) -> Result<Vec<Check>> {
    let pr = params(l, m, field.q());
    let code = affine_grassmann_code(l, m, field)?;
    let pred = predicted_orders(l, m, field);
    let brute = paut_brute_force(&code)?;
    let gens = in_affine_coordinates(&paut_affine_generators(l, m, field)?, l, m)?;
    let perms = column_permutations(&code, &gens.linear().maps())?;
    let generated = crate::perm::group_order(&perms)?;
    let mut out = vec![
        Check::new("paut_affine", pr.clone(), pred.paut_affine, brute.order()),
        Check::new(
            "paut_affine_generated",
            pr.clone(),
            pred.paut_affine,
            generated,
        ),
        Check::new(
            "paut_generators_found",
            pr.clone(),
            perms.len(),
            perms.iter().filter(|p| brute.contains(p)).count(),
        ),
    ];
    // group axioms on random products of the strong generators
    let sg = brute.strong_generators();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples = 20;
    let mut ok = 0;
    for _ in 0..samples {
        let mut x = Permutation::identity(code.n());
        for _ in 0..rng.gen_range(1..=8) {
            if !sg.is_empty() {
                x = x.then(&sg[rng.gen_range(0..sg.len())]);
            }
        }
        let inv = x.inverse();
        let closed = brute.contains(&x) && brute.contains(&inv);
        ok += usize::from(
            closed
                && is_permutation_automorphism(&code, &x)
                && is_permutation_automorphism(&code, &inv),
        );
    }
    out.push(Check::new("paut_group_axioms", pr, samples, ok));
    Ok(out)
}

/// The three codes at (ℓ, m, q), the Schubert code included when Ω has
/// enough points to carry a code.
pub fn fixture_codes(l: usize, m: usize, field: &Field) -> Result<Vec<(&'static str, LinearCode)>> {
    let g = Grassmannian::new(l, m, field)?;
    Ok(vec![
        ("grassmann", grassmann_code_from(&g)?),
        ("affine", affine_grassmann_code(l, m, field)?),
        ("schubert", schubert_code_from(&g)?),
    ])
}

/// Random isometric copies must be recognized with a valid witness; random
/// codes with a different weight distribution must not.
pub fn macwilliams_suite(l: usize, m: usize, field: &Field, seed: u64) -> Result<Vec<Check>> {
    let pr = params(l, m, field.q());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let trials = 50;
    let mut out = Vec::new();
    for (name, code) in fixture_codes(l, m, field)? {
        let mut found = 0;
        for _ in 0..trials {
            let iso = Isometry::random(field, code.n(), &mut rng);
            let basis = Matrix::random_invertible(field, code.k(), &mut rng);
            let image = LinearCode::unlabeled(basis.mul(&iso.apply_genmat(&code.genmat)))?;
            if let Some(w) = codes_equivalent(&code, &image)? {
                found += usize::from(w.maps(&code, &image));
            }
        }
        out.push(Check::new(
            format!("equivalent_{name}"),
            pr.clone(),
            trials,
            found,
        ));

        let reference = code.weight_distribution()?;
        let mut rejected = 0;
        for _ in 0..trials {
            let other = loop {
                let r = random_code(field, code.k(), code.n(), &mut rng)?;
                if r.weight_distribution()? != reference {
                    break r;
                }
            };
            rejected += usize::from(codes_equivalent(&code, &other)?.is_none());
        }
        out.push(Check::new(
            format!("inequivalent_{name}"),
            pr.clone(),
            trials,
            rejected,
        ));
    }
    Ok(out)
}

/// n, k and minimum distance by exhaustive sweep against q^{ℓ(m-ℓ)}.
pub fn parameter_check(l: usize, m: usize, field: &Field) -> Result<Check> {
    let q = field.q() as u128;
    let code = crate::codes::grassmann_code(l, m, field)?;
    let n = gaussian_binomial(m as u32, l as u32, q as u64);
    let k = multi_index_list(l, m)?.len();
    let d = q.pow((l * (m - l)) as u32);
    Ok(Check::new(
        "parameters",
        params(l, m, field.q()),
        format!("[{n};{k};{d}]"),
        format!("[{};{};{}]", code.n(), code.k(), code.min_distance()?),
    ))
}

/// Every 2-dimensional subcode of the Grassmann code: count, agreement of
/// the averaged and direct support sizes, and the minimum.
pub fn second_weight_check(l: usize, m: usize, field: &Field) -> Result<Vec<Check>> {
    let pr = params(l, m, field.q());
    let q = field.q() as u128;
    let code = crate::codes::grassmann_code(l, m, field)?;
    let subspaces = enumerate_subspaces(field, 2, code.k())?;
    let mut agree = 0;
    let mut min = u64::MAX;
    for s in &subspaces {
        let basis = s.basis().mul(&code.genmat);
        let w = subcode_weight(&code, &basis)?;
        agree += usize::from(w.agree());
        min = min.min(w.direct);
    }
    let predicted_min = q.pow((l * (m - l)) as u32 - 1) * (1 + q);
    Ok(vec![
        Check::new(
            "subcodes_2",
            pr.clone(),
            gaussian_binomial(code.k() as u32, 2, q as u64),
            subspaces.len(),
        ),
        Check::new("subcode_weights_agree", pr.clone(), subspaces.len(), agree),
        Check::new("second_weight", pr, predicted_min, min),
    ])
}
