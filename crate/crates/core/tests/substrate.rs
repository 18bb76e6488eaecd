//! Gröbner bases and syzygies against plain linear algebra over F_2, one
//! graded piece at a time.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stablehom::gb::{buchberger, normal_form};
use stablehom::syz::syzygies;
use stablehom::{Field, Matrix, Poly, QuotientRing, Ring};

const NAMES: [&str; 3] = ["x", "y", "z"];
const TOP: u32 = 4;

fn monomials(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    if nvars == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for mut rest in monomials(nvars - 1, d - a) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

fn mono_str(e: &[u32]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| if k == 1 { NAMES[i].to_string() } else { format!("{}^{k}", NAMES[i]) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Dense F_2 vector of a homogeneous polynomial on the monomials of degree `d`.
fn dense(p: &Poly, basis: &[Vec<u32>]) -> Vec<bool> {
    let mut v = vec![false; basis.len()];
    for (m, c) in p.terms() {
        let e: Vec<u32> = (0..basis[0].len()).map(|i| m.exponent(i) as u32).collect();
        let i = basis.iter().position(|b| *b == e).expect("term of the wrong degree");
        if c.residue() == Some(1) {
            v[i] = !v[i];
        }
    }
    v
}

/// Row reduction over F_2; returns the rank and the reduced rows.
fn f2_rank(rows: &[Vec<bool>]) -> (usize, Vec<Vec<bool>>) {
    let mut rows: Vec<Vec<bool>> = rows.to_vec();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c]) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (i, r) in rows.iter_mut().enumerate() {
            if i != rank && r[c] {
                for (a, b) in r.iter_mut().zip(&pivot) {
                    *a ^= *b;
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    (rank, rows)
}

fn in_span(rows: &[Vec<bool>], v: &[bool]) -> bool {
    let (r, _) = f2_rank(rows);
    let mut with = rows.to_vec();
    with.push(v.to_vec());
    f2_rank(&with).0 == r
}

fn random_poly(ring: &Ring, nvars: usize, d: u32, rng: &mut ChaCha8Rng) -> Poly {
    let terms: Vec<String> =
        monomials(nvars, d).iter().filter(|_| rng.gen_bool(0.5)).map(|e| mono_str(e)).collect();
    if terms.is_empty() {
        return Poly::zero();
    }
    ring.parse_poly(&terms.join(" + ")).unwrap()
}

/// Spanning set of `I_d` inside `S_d`.
fn ideal_piece(ring: &Ring, gens: &[(Poly, u32)], nvars: usize, d: u32) -> Vec<Vec<bool>> {
    let basis = monomials(nvars, d);
    let mut rows = Vec::new();
    for (g, e) in gens {
        if *e > d {
            continue;
        }
        for m in monomials(nvars, d - e) {
            let mp = ring.parse_poly(&mono_str(&m)).unwrap();
            rows.push(dense(&ring.mul(&mp, g), &basis));
        }
    }
    rows
}

struct Instance {
    ring: Ring,
    nvars: usize,
    gens: Vec<(Poly, u32)>,
}

fn instance(seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nvars = rng.gen_range(2..=3);
    let f2 = Field::prime(2).unwrap();
    let ring = QuotientRing::parse(f2, &NAMES[..nvars], &[]).unwrap();
    let count = rng.gen_range(1..=3);
    let mut gens = Vec::new();
    while gens.len() < count {
        let d = rng.gen_range(1..=3);
        let p = random_poly(&ring, nvars, d, &mut rng);
        if !p.is_zero() {
            gens.push((p, d));
        }
    }
    Instance { ring, nvars, gens }
}

const INSTANCES: u64 = 120;

#[test]
fn groebner_membership_matches_linear_algebra() {
    let mut checked = 0;
    for seed in 0..INSTANCES {
        let inst = instance(seed);
        let polys: Vec<Poly> = inst.gens.iter().map(|g| g.0.clone()).collect();
        let gb = buchberger(inst.ring.poly_ring(), &polys).unwrap();
        let lts: Vec<_> = gb.leading_terms();
        let mut rng = ChaCha8Rng::seed_from_u64(seed + 10_000);
        for d in 0..=TOP {
            let basis = monomials(inst.nvars, d);
            let piece = ideal_piece(&inst.ring, &inst.gens, inst.nvars, d);
            let (rank, _) = f2_rank(&piece);
            let standard = stablehom::Monomial::all_of_degree(inst.nvars, d)
                .into_iter()
                .filter(|m| !lts.iter().any(|t| t.mono.divides(m)))
                .count();
            assert_eq!(standard, basis.len() - rank, "seed {seed} degree {d}: Hilbert function");
            for _ in 0..4 {
                let p = random_poly(&inst.ring, inst.nvars, d, &mut rng);
                let member = in_span(&piece, &dense(&p, &basis));
                assert_eq!(normal_form(&p, &gb).is_zero(), member, "seed {seed} degree {d}: membership of {p:?}");
            }
            // an element of I_d built from the spanning set
            let mut q = Poly::zero();
            for (g, e) in &inst.gens {
                if *e <= d {
                    let m = random_poly(&inst.ring, inst.nvars, d - e, &mut rng);
                    q = inst.ring.add(&q, &inst.ring.mul(&m, g));
                }
            }
            assert!(normal_form(&q, &gb).is_zero(), "seed {seed}: ideal element not reduced to zero");
        }
        checked += 1;
    }
    assert!(checked >= 100);
}

#[test]
fn syzygies_are_complete_in_low_degrees() {
    for seed in 0..INSTANCES {
        let inst = instance(seed);
        let ring = &inst.ring;
        let row: Vec<Poly> = inst.gens.iter().map(|g| g.0.clone()).collect();
        let degs: Vec<i32> = inst.gens.iter().map(|g| g.1 as i32).collect();
        let a = Matrix::from_rows(&[row.clone()], row.len());
        let (z, zd) = syzygies(ring, &a, &[0], &degs).unwrap();
        // soundness
        for c in z.columns() {
            assert!(a.apply(ring, c).is_zero(), "seed {seed}: not a syzygy");
        }
        for d in 0..=TOP {
            // coordinates on ⊕_i S_{d - e_i}
            let blocks: Vec<Vec<Vec<u32>>> =
                inst.gens.iter().map(|g| if g.1 <= d { monomials(inst.nvars, d - g.1) } else { Vec::new() }).collect();
            let width: usize = blocks.iter().map(|b| b.len()).sum();
            if width == 0 {
                continue;
            }
            let target = monomials(inst.nvars, d);
            // kernel dimension of the multiplication map
            let mut images = Vec::new();
            for (i, b) in blocks.iter().enumerate() {
                for m in b {
                    let mp = ring.parse_poly(&mono_str(m)).unwrap();
                    images.push(dense(&ring.mul(&mp, &row[i]), &target));
                }
            }
            let kernel_dim = width - f2_rank(&images).0;
            // span of monomial multiples of the computed generators
            let mut spans = Vec::new();
            for (j, c) in z.columns().iter().enumerate() {
                let zdeg = zd[j] as u32;
                if zdeg > d {
                    continue;
                }
                for m in monomials(inst.nvars, d - zdeg) {
                    let mp = ring.parse_poly(&mono_str(&m)).unwrap();
                    let mut v = Vec::with_capacity(width);
                    for (i, b) in blocks.iter().enumerate() {
                        if b.is_empty() {
                            continue;
                        }
                        let entry = ring.mul(&mp, &c.component(i as u32));
                        v.extend(dense(&entry, b));
                    }
                    spans.push(v);
                }
            }
            let got = if spans.is_empty() { 0 } else { f2_rank(&spans).0 };
            assert_eq!(got, kernel_dim, "seed {seed} degree {d}: syzygy span");
        }
    }
}

#[test]
fn reduced_basis_is_independent_of_generator_order() {
    for seed in 0..INSTANCES {
        let inst = instance(seed);
        let polys: Vec<Poly> = inst.gens.iter().map(|g| g.0.clone()).collect();
        let gb = buchberger(inst.ring.poly_ring(), &polys).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xfeed);
        for _ in 0..3 {
            let mut perm = polys.clone();
            for i in (1..perm.len()).rev() {
                perm.swap(i, rng.gen_range(0..=i));
            }
            // a redundant extra generator must not change the answer either
            if perm.len() >= 2 {
                let extra = inst.ring.add(&perm[0], &perm[1]);
                if extra.is_homogeneous() && !extra.is_zero() {
                    perm.push(extra);
                }
            }
            let other = buchberger(inst.ring.poly_ring(), &perm).unwrap();
            assert_eq!(gb.elements(), other.elements(), "seed {seed}");
        }
    }
}
