//! Self-check suites: exhaustive enumerations and seeded randomized trials of
//! the identities the library is built on.

use std::error::Error;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    admissible_words, basis, iterated_bracket, shuffle_expand, shuffle_expand_indices, AlgebraElement, Shape,
};
use crate::exec::Execution;
use crate::group::{descend, group_commutator, is_member_h, lift_h, GroupElement};
use crate::lcs::{lcs_quotient_basis, lcs_rank, pairing_matrix_with};
use crate::ring::RingSpec;
use crate::tensor::lie::{check_lie_equals_gamma_cap_primitives, lie_submodule};
use crate::tensor::rigidity::natural_maps;
use crate::tensor::{
    convolution, counit_map, generator_map, is_coalgebra_map, verify_theta_injectivity, verify_theta_injectivity_block,
    FreeModule, LinearMapMatrix,
};

type Res<T> = Result<T, Box<dyn Error + Send + Sync>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Basis,
    Shuffle,
    Commutator,
    Relations,
    Torsion,
    Lie,
    Pairing,
    ThetaInj,
    ThetaMult,
    Coalg,
    Lift,
    Rigidity,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Basis,
        Suite::Shuffle,
        Suite::Commutator,
        Suite::Relations,
        Suite::Torsion,
        Suite::Lie,
        Suite::Pairing,
        Suite::ThetaInj,
        Suite::ThetaMult,
        Suite::Coalg,
        Suite::Lift,
        Suite::Rigidity,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Basis => "basis",
            Suite::Shuffle => "shuffle",
            Suite::Commutator => "commutator",
            Suite::Relations => "relations",
            Suite::Torsion => "torsion",
            Suite::Lie => "lie",
            Suite::Pairing => "pairing",
            Suite::ThetaInj => "theta-inj",
            Suite::ThetaMult => "theta-mult",
            Suite::Coalg => "coalg",
            Suite::Lift => "lift",
            Suite::Rigidity => "rigidity",
        }
    }

    fn salt(&self) -> u64 {
        *self as u64 + 1
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownSuite(pub String);

impl fmt::Display for UnknownSuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = Suite::ALL.iter().map(Suite::name).collect();
        write!(
            f,
            "unknown suite `{}` (expected one of {}, all)",
            self.0,
            names.join(", ")
        )
    }
}

impl Error for UnknownSuite {}

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .iter()
            .copied()
            .find(|x| x.name() == s)
            .ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            write!(f, "{status} {}: {}", self.suite, c.name)?;
            if !c.detail.is_empty() {
                write!(f, " ({})", c.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

struct Recorder(Vec<Check>);

impl Recorder {
    fn record(&mut self, name: impl Into<String>, outcome: Res<(bool, String)>) {
        let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
        self.0.push(Check {
            name: name.into(),
            passed,
            detail,
        });
    }

    /// One check over many trials; each trial returns a failure description or `None`.
    fn trials<T, F>(&mut self, name: impl Into<String>, exec: Execution, items: &[T], f: F)
    where
        T: Sync,
        F: Fn(&T) -> Res<Option<String>> + Sync + Send,
    {
        let results = exec.map(items, |t| f(t).unwrap_or_else(|e| Some(format!("error: {e}"))));
        let failures: Vec<String> = results.into_iter().flatten().collect();
        let detail = match failures.first() {
            None => format!("{} trials", items.len()),
            Some(first) => format!("{} of {} trials failed; first: {first}", failures.len(), items.len()),
        };
        self.record(name, Ok((failures.is_empty(), detail)));
    }
}

pub fn run(suite: Suite, seed: u64, exec: Execution) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ suite.salt());
    let mut rec = Recorder(Vec::new());
    match suite {
        Suite::Basis => basis_suite(&mut rec),
        Suite::Shuffle => shuffle_suite(&mut rec, &mut rng, exec),
        Suite::Commutator => commutator_suite(&mut rec, &mut rng, exec),
        Suite::Relations => relations_suite(&mut rec, &mut rng, exec),
        Suite::Torsion => torsion_suite(&mut rec),
        Suite::Lie => lie_suite(&mut rec, exec),
        Suite::Pairing => pairing_suite(&mut rec, exec),
        Suite::ThetaInj => theta_inj_suite(&mut rec, exec),
        Suite::ThetaMult => theta_mult_suite(&mut rec, &mut rng, exec),
        Suite::Coalg => coalg_suite(&mut rec, &mut rng, exec),
        Suite::Lift => lift_suite(&mut rec, &mut rng, exec),
        Suite::Rigidity => rigidity_suite(&mut rec, exec),
    }
    SuiteReport {
        suite,
        seed,
        checks: rec.0,
    }
}

pub fn run_all(seed: u64, exec: Execution) -> Vec<SuiteReport> {
    Suite::ALL.iter().map(|&s| run(s, seed, exec)).collect()
}

fn z9() -> RingSpec {
    RingSpec::modular(9).expect("9 > 1")
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn falling(n: usize, t: usize) -> usize {
    (0..t).map(|i| n - i).product()
}

fn basis_suite(rec: &mut Recorder) {
    for n in 0..=6 {
        let counts: Vec<usize> = (0..=n + 1).map(|t| basis(n, 1, t).len()).collect();
        let want: Vec<usize> = (0..=n + 1).map(|t| if t <= n { falling(n, t) } else { 0 }).collect();
        rec.record(
            format!("degree counts of A(y1..y{n})"),
            Ok((counts == want, format!("{counts:?}"))),
        );
    }
    for (n, k, t, want) in [(4, 2, 1, 12), (4, 2, 2, 24), (5, 2, 2, 120), (3, 2, 2, 0)] {
        let got = basis(n, k, t).len();
        rec.record(
            format!("block monomials n={n} k={k} t={t}"),
            Ok((got == want, got.to_string())),
        );
    }
}

fn shuffle_suite(rec: &mut Recorder, rng: &mut ChaCha8Rng, exec: Execution) {
    for n in 1..=5 {
        let shape = Shape::cohen(RingSpec::Z, n).expect("small n");
        let lists: Vec<Vec<u8>> = (1..=5).flat_map(|len| admissible_words(n, len)).collect();
        rec.trials(format!("all admissible lists on {n} generators"), exec, &lists, |ix| {
            let ix: Vec<usize> = ix.iter().map(|&i| i as usize).collect();
            shuffle_matches(shape, &ix)
        });
    }
    let shape = Shape::cohen(RingSpec::Z, 5).expect("small n");
    let repeated: Vec<Vec<usize>> = (0..50)
        .map(|_| {
            let len = rng.gen_range(2..=5);
            let mut ix: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=5)).collect();
            let (a, b) = (rng.gen_range(0..len), rng.gen_range(0..len));
            ix[a] = ix[b];
            ix
        })
        .collect();
    rec.trials("random lists with repeats", exec, &repeated, |ix| {
        shuffle_matches(shape, ix)
    });
    let block_shape = Shape::new(z9(), 6, 2).expect("small n");
    let blocks: Vec<Vec<Vec<usize>>> = (0..30)
        .map(|_| {
            let t = rng.gen_range(1..=3);
            (0..t).map(|_| (0..2).map(|_| rng.gen_range(1..=6)).collect()).collect()
        })
        .collect();
    rec.trials("random block brackets over zmod:9", exec, &blocks, |bs| {
        let gens = bs
            .iter()
            .map(|b| AlgebraElement::block_generator(block_shape, b))
            .collect::<Result<Vec<_>, _>>()?;
        let (a, b) = (shuffle_expand(&gens)?, iterated_bracket(&gens)?);
        Ok((a != b).then(|| format!("{bs:?}: {a} vs {b}")))
    });
}

fn shuffle_matches(shape: Shape, ix: &[usize]) -> Res<Option<String>> {
    let gens = ix
        .iter()
        .map(|&i| AlgebraElement::generator(shape, i))
        .collect::<Result<Vec<_>, _>>()?;
    let a = shuffle_expand_indices(shape, ix)?;
    let b = iterated_bracket(&gens)?;
    Ok((a != b).then(|| format!("{ix:?}: {a} vs {b}")))
}

#[derive(Debug)]
struct CommutatorInstance {
    n: usize,
    indices: Vec<usize>,
    r: Vec<i64>,
    m: Vec<i64>,
}

fn commutator_instances(rng: &mut ChaCha8Rng, count: usize) -> Vec<CommutatorInstance> {
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=5);
            let t = rng.gen_range(1..=4);
            CommutatorInstance {
                n,
                indices: (0..t).map(|_| rng.gen_range(1..=n)).collect(),
                r: (0..t).map(|_| rng.gen_range(-5..=5)).collect(),
                m: (0..t).map(|_| rng.gen_range(-5..=5)).collect(),
            }
        })
        .collect()
}

fn commutator_or_single(gs: &[GroupElement]) -> Res<GroupElement> {
    Ok(if gs.len() == 1 {
        gs[0].clone()
    } else {
        group_commutator(gs)?
    })
}

fn commutator_suite(rec: &mut Recorder, rng: &mut ChaCha8Rng, exec: Execution) {
    for ring in [RingSpec::Z, z9()] {
        let instances = commutator_instances(rng, 100);
        for with_powers in [false, true] {
            let label = if with_powers {
                "powered generators"
            } else {
                "generators"
            };
            rec.trials(
                format!("commutators of {label} over {ring}"),
                exec,
                &instances,
                |inst| {
                    let shape = Shape::cohen(ring, inst.n)?;
                    let mut gs = Vec::new();
                    let mut scalar = BigInt::one();
                    for (s, &i) in inst.indices.iter().enumerate() {
                        let g = GroupElement::generator(shape, i, inst.r[s])?;
                        scalar *= inst.r[s];
                        if with_powers {
                            gs.push(g.pow(inst.m[s])?);
                            scalar *= inst.m[s];
                        } else {
                            gs.push(g);
                        }
                    }
                    let got = commutator_or_single(&gs)?;
                    let ys = inst
                        .indices
                        .iter()
                        .map(|&i| AlgebraElement::generator(shape, i))
                        .collect::<Result<Vec<_>, _>>()?;
                    let want = AlgebraElement::one(shape).add(&iterated_bracket(&ys)?.scale(&scalar))?;
                    Ok((got.canon() != &want).then(|| format!("{inst:?}: {} vs {want}", got.canon())))
                },
            );
        }
    }
}

/// Redistributes factors between entries so that the product is unchanged in `Z`;
/// over `Z/m` one entry is also shifted by `m`.
fn rebracket(rng: &mut ChaCha8Rng, r: &[i64], ring: RingSpec) -> Vec<i64> {
    let mut out = r.to_vec();
    for _ in 0..3 {
        let i = rng.gen_range(0..out.len());
        let j = rng.gen_range(0..out.len());
        if i == j || out[i] == 0 {
            continue;
        }
        let divisors: Vec<i64> = (1..=out[i].abs()).filter(|d| out[i] % d == 0).collect();
        let d = divisors.choose(rng).copied().unwrap_or(1) * if rng.gen_bool(0.5) { -1 } else { 1 };
        out[i] /= d;
        out[j] *= d;
    }
    out.shuffle(rng);
    if let Some(m) = ring.modulus() {
        let i = rng.gen_range(0..out.len());
        out[i] += m as i64;
    }
    out
}

#[derive(Debug)]
struct RelationInstance {
    n: usize,
    blocks: Vec<Vec<usize>>,
    r: Vec<i64>,
    r2: Vec<i64>,
}

fn random_block(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    (0..k).map(|_| rng.gen_range(1..=n)).collect()
}

fn block_commutator(shape: Shape, blocks: &[Vec<usize>], r: &[i64]) -> Res<GroupElement> {
    let gs = blocks
        .iter()
        .zip(r)
        .map(|(b, &e)| GroupElement::block_generator(shape, b, e))
        .collect::<Result<Vec<_>, _>>()?;
    commutator_or_single(&gs)
}

fn relations_suite(rec: &mut Recorder, rng: &mut ChaCha8Rng, exec: Execution) {
    for ring in [RingSpec::Z, z9()] {
        for k in 1..=2usize {
            let fresh = |rng: &mut ChaCha8Rng, l_min: usize| -> RelationInstance {
                let n = rng.gen_range(k..=5);
                let l = rng.gen_range(l_min..=4);
                let blocks = (0..l).map(|_| random_block(rng, n, k)).collect();
                let r: Vec<i64> = (0..l).map(|_| rng.gen_range(-5..=5)).collect();
                RelationInstance {
                    n,
                    blocks,
                    r,
                    r2: Vec::new(),
                }
            };
            let additive: Vec<RelationInstance> = (0..100)
                .map(|_| {
                    let mut inst = fresh(rng, 1);
                    inst.blocks.truncate(1);
                    inst.r2 = vec![rng.gen_range(-5..=5)];
                    inst
                })
                .collect();
            rec.trials(
                format!("x^r x^s = x^(r+s) over {ring}, k={k}"),
                exec,
                &additive,
                |inst| {
                    let shape = Shape::new(ring, inst.n, k)?;
                    let b = &inst.blocks[0];
                    let lhs = GroupElement::block_generator(shape, b, inst.r[0])?
                        .mul(&GroupElement::block_generator(shape, b, inst.r2[0])?)?;
                    let rhs = GroupElement::block_generator(shape, b, inst.r[0] + inst.r2[0])?;
                    Ok((lhs != rhs).then(|| format!("{inst:?}")))
                },
            );
            let vanishing: Vec<RelationInstance> = (0..100)
                .map(|_| {
                    let mut inst = fresh(rng, if k == 1 { 2 } else { 1 });
                    let flat: usize = inst.blocks.len() * k;
                    let (a, b) = loop {
                        let (a, b) = (rng.gen_range(0..flat), rng.gen_range(0..flat));
                        if a != b {
                            break (a, b);
                        }
                    };
                    let v = inst.blocks[b / k][b % k];
                    inst.blocks[a / k][a % k] = v;
                    inst
                })
                .collect();
            rec.trials(
                format!("repeated index gives 1 over {ring}, k={k}"),
                exec,
                &vanishing,
                |inst| {
                    let shape = Shape::new(ring, inst.n, k)?;
                    let g = block_commutator(shape, &inst.blocks, &inst.r)?;
                    Ok((!g.is_identity()).then(|| format!("{inst:?}: {}", g.canon())))
                },
            );
            let rebracketed: Vec<RelationInstance> = (0..100)
                .map(|_| {
                    let mut inst = fresh(rng, 2);
                    inst.r2 = rebracket(rng, &inst.r, ring);
                    inst
                })
                .collect();
            rec.trials(
                format!("rebracketing exponents over {ring}, k={k}"),
                exec,
                &rebracketed,
                |inst| {
                    let shape = Shape::new(ring, inst.n, k)?;
                    let a = block_commutator(shape, &inst.blocks, &inst.r)?;
                    let b = block_commutator(shape, &inst.blocks, &inst.r2)?;
                    Ok((a != b).then(|| format!("{inst:?}: {} vs {}", a.canon(), b.canon())))
                },
            );
        }
    }
}

fn torsion_suite(rec: &mut Recorder) {
    for (p, r) in [(2u64, 1u32), (2, 2), (3, 1)] {
        let q = p.pow(r);
        let ring = RingSpec::modular(q).expect("q > 1");
        for k in 1..=2 {
            let outcome = || -> Res<(bool, String)> {
                let shape = Shape::new(ring, 4, k)?;
                let mut ok = true;
                let mut exact_order = true;
                let blocks = admissible_words(4, k);
                for b in &blocks {
                    let ix: Vec<usize> = b.iter().map(|&i| i as usize).collect();
                    let g = GroupElement::block_generator(shape, &ix, 1)?;
                    ok &= g.pow(q)?.is_identity();
                    exact_order &= !g.pow(q / p)?.is_identity();
                }
                Ok((ok && exact_order, format!("{} blocks, order exactly {q}", blocks.len())))
            };
            rec.record(format!("(1 + y_I)^{q} = 1 over {ring}, k={k}"), outcome());
        }
    }
}

fn lie_suite(rec: &mut Recorder, exec: Execution) {
    for n in 2..=5 {
        let outcome = || -> Res<(bool, String)> {
            let r = lie_submodule(RingSpec::Z, n)?.rank()?;
            let b = lcs_rank(n, 1, n, RingSpec::Z)?;
            Ok((
                r == factorial(n - 1) && b == r,
                format!("Lie rank {r}, bracket basis rank {b}"),
            ))
        };
        rec.record(format!("rank of Lie({n}) over z"), outcome());
    }
    for ring in [
        RingSpec::Z,
        RingSpec::modular(2).expect("2 > 1"),
        RingSpec::modular(3).expect("3 > 1"),
    ] {
        for n in 1..=4 {
            let outcome = || -> Res<(bool, String)> {
                let c = check_lie_equals_gamma_cap_primitives(ring, n, exec)?;
                Ok((
                    c.equal,
                    format!("kernel rank {}, Lie rank {}", c.kernel_rank, c.lie_rank),
                ))
            };
            rec.record(format!("primitives of gamma_{n} are Lie({n}) over {ring}"), outcome());
        }
    }
}

fn pairing_suite(rec: &mut Recorder, exec: Execution) {
    for n in 1..=6 {
        for k in 1..=2 {
            for t in 1..=3 {
                if k * t > n {
                    continue;
                }
                let outcome = || -> Res<(bool, String)> {
                    let m = pairing_matrix_with(n, k, t, exec)?;
                    let count = lcs_quotient_basis(n, k, t).len();
                    let r = lcs_rank(n, k, t, RingSpec::Z)?;
                    Ok((m.is_identity() && r == count, format!("{count} brackets, rank {r}")))
                };
                rec.record(format!("pairing matrix n={n} k={k} t={t}"), outcome());
            }
        }
    }
}

fn theta_inj_suite(rec: &mut Recorder, exec: Execution) {
    for (n, m) in [(1, 1), (2, 2), (3, 3), (2, 3)] {
        let outcome = verify_theta_injectivity(RingSpec::Z, n, m, exec).map(|ok| (ok, String::new()));
        rec.record(format!("theta_{n} injective at dim {m}"), outcome.map_err(Into::into));
    }
    for (n, k, m) in [(4, 2, 4), (2, 2, 2)] {
        let outcome = verify_theta_injectivity_block(RingSpec::Z, n, k, m, exec).map(|ok| (ok, String::new()));
        rec.record(
            format!("theta_{n} injective on blocks of size {k} at dim {m}"),
            outcome.map_err(Into::into),
        );
    }
}

fn random_element(rng: &mut ChaCha8Rng, shape: Shape, max_degree: usize) -> Res<AlgebraElement> {
    let terms: Vec<(Vec<u8>, BigInt)> = (0..rng.gen_range(1..=4))
        .map(|_| {
            let len = rng.gen_range(0..=max_degree.min(shape.n));
            let mut ix: Vec<u8> = (1..=shape.n as u8).collect();
            ix.shuffle(rng);
            ix.truncate(len);
            (ix, BigInt::from(rng.gen_range(-3..=3)))
        })
        .collect();
    Ok(AlgebraElement::from_terms(shape, terms)?)
}

fn theta_mult_suite(rec: &mut Recorder, rng: &mut ChaCha8Rng, exec: Execution) {
    for n in 2..=3 {
        let shape = Shape::cohen(RingSpec::Z, n).expect("small n");
        let module = FreeModule::new(RingSpec::Z, 2).expect("dim 2");
        let pairs: Vec<(AlgebraElement, AlgebraElement)> = (0..20)
            .map(|_| Ok((random_element(rng, shape, 2)?, random_element(rng, shape, 2)?)))
            .collect::<Res<_>>()
            .unwrap_or_default();
        rec.trials(
            format!("theta(a) * theta(b) = theta(ab), n={n}"),
            exec,
            &pairs,
            |(a, b)| {
                let fa = LinearMapMatrix::of_theta(a, module, n, Execution::Sequential)?;
                let fb = LinearMapMatrix::of_theta(b, module, n, Execution::Sequential)?;
                let fab = LinearMapMatrix::of_theta(&a.mul(b)?, module, n, Execution::Sequential)?;
                Ok((convolution(&fa, &fb)? != fab).then(|| format!("a = {a}, b = {b}")))
            },
        );
        let monomials: Vec<Vec<u8>> = (0..=n).flat_map(|t| admissible_words(n, t)).collect();
        rec.trials(
            format!("theta of a monomial is the convolution of generators, n={n}"),
            exec,
            &monomials,
            |ix| {
                let a = AlgebraElement::from_terms(shape, [(ix.clone(), BigInt::one())])?;
                let mut f = counit_map(n, 1, module, n)?;
                for &i in ix {
                    f = convolution(&f, &generator_map(n, &[i as usize], module, n)?)?;
                }
                let want = LinearMapMatrix::of_theta(&a, module, n, Execution::Sequential)?;
                Ok((f != want).then(|| format!("{a}")))
            },
        );
    }
}

fn random_word(rng: &mut ChaCha8Rng, n: usize) -> String {
    let factors = rng.gen_range(1..=6);
    let mut out = Vec::new();
    for _ in 0..factors {
        let letter = |rng: &mut ChaCha8Rng| format!("x{}^{}", rng.gen_range(1..=n), rng.gen_range(-3..=3));
        if rng.gen_bool(0.4) {
            let t = rng.gen_range(2..=3);
            let parts: Vec<String> = (0..t).map(|_| letter(rng)).collect();
            out.push(format!("[{}]", parts.join(",")));
        } else {
            out.push(letter(rng));
        }
    }
    out.join(" ")
}

fn coalg_suite(rec: &mut Recorder, rng: &mut ChaCha8Rng, exec: Execution) {
    for (ring, n, count) in [(RingSpec::Z, 3, 20), (RingSpec::modular(2).expect("2 > 1"), 4, 10)] {
        let shape = Shape::cohen(ring, n).expect("small n");
        let module = FreeModule::new(ring, 2).expect("dim 2");
        let words: Vec<String> = (0..count).map(|_| random_word(rng, n)).collect();
        rec.trials(
            format!("theta of group elements is a coalgebra map over {ring}, n={n}"),
            exec,
            &words,
            |w| {
                let g = GroupElement::parse(shape, w)?;
                let c = is_coalgebra_map(g.canon(), module, n, Execution::Sequential)?;
                Ok((!c.holds()).then(|| format!("{w}: first failure at {:?}", c.first_failure)))
            },
        );
    }
    let outcome = || -> Res<(bool, String)> {
        let shape = Shape::cohen(RingSpec::Z, 2)?;
        let a = crate::algebra::parse_element(shape, "1 + y1.y2")?;
        let c = is_coalgebra_map(&a, FreeModule::new(RingSpec::Z, 2)?, 2, exec)?;
        Ok((!c.holds(), "1 + y1.y2 must be rejected".into()))
    };
    rec.record("control element outside the group", outcome());
}

/// A random word in `x_1, x_2` with zero exponent sum in each generator.
fn random_kernel_word(rng: &mut ChaCha8Rng) -> String {
    let mut sums = [0i64; 2];
    let mut parts = Vec::new();
    for _ in 0..rng.gen_range(2..=6) {
        let i = rng.gen_range(0..2);
        let e = rng.gen_range(-3..=3);
        sums[i] += e;
        parts.push(format!("x{}^{e}", i + 1));
    }
    for (i, s) in sums.iter().enumerate() {
        if *s != 0 {
            parts.push(format!("x{}^{}", i + 1, -s));
        }
    }
    parts.join(" ")
}

fn lift_suite(rec: &mut Recorder, rng: &mut ChaCha8Rng, exec: Execution) {
    let mut alphas = vec!["[x1,x2]".to_string()];
    let mut seen = 0;
    while seen < 5 {
        let w = random_kernel_word(rng);
        let shape = Shape::cohen(RingSpec::Z, 2).expect("n = 2");
        if GroupElement::parse(shape, &w)
            .map(|g| !g.is_identity())
            .unwrap_or(false)
        {
            alphas.push(w);
            seen += 1;
        }
    }
    for n in 2..=4 {
        rec.trials(
            format!("lift to level {n} is in H_{n} and descends back"),
            exec,
            &alphas,
            |w| {
                let alpha = GroupElement::parse(Shape::cohen(RingSpec::Z, 2)?, w)?;
                let lifted = lift_h(&alpha, n)?;
                let member = is_member_h(&lifted)?;
                if !member.member {
                    return Ok(Some(format!("{w}: {}", member.failures.join("; "))));
                }
                let back = descend(&lifted, 2)?;
                Ok((back != alpha).then(|| format!("{w}: descends to {}", back.canon())))
            },
        );
    }
}

fn rigidity_suite(rec: &mut Recorder, exec: Execution) {
    for n in 1..=3 {
        let outcome = || -> Res<(bool, String)> {
            let r = natural_maps(RingSpec::Z, n, n, n, exec)?;
            Ok((
                r.matches_place_permutations && r.natural_rank == factorial(n),
                format!(
                    "natural rank {}, Sigma_d-equivariant rank {}",
                    r.natural_rank, r.permutation_equivariant_rank
                ),
            ))
        };
        rec.record(format!("natural maps of V^(x){n} with dim V = {n}"), outcome());
    }
    for (n, p) in [(1, 2), (2, 1), (2, 3), (3, 2)] {
        let outcome = || -> Res<(bool, String)> {
            let r = natural_maps(RingSpec::Z, n.max(p), n, p, exec)?;
            Ok((r.natural_rank == 0, format!("natural rank {}", r.natural_rank)))
        };
        rec.record(format!("no natural maps V^(x){n} -> V^(x){p}"), outcome());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nosuchsuite".parse::<Suite>().is_err());
    }

    #[test]
    fn cheap_suites_pass() {
        for s in [
            Suite::Basis,
            Suite::Torsion,
            Suite::Shuffle,
            Suite::Commutator,
            Suite::Lift,
        ] {
            let r = run(s, 7, Execution::Parallel);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run(Suite::Relations, 3, Execution::Parallel);
        let b = run(Suite::Relations, 3, Execution::Sequential);
        assert_eq!(a, b);
        assert!(a.passed(), "{a}");
    }

    #[test]
    fn rebracketing_keeps_the_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let r: Vec<i64> = (0..3).map(|_| rng.gen_range(-5..=5)).collect();
            let r2 = rebracket(&mut rng, &r, RingSpec::Z);
            assert_eq!(r.iter().product::<i64>(), r2.iter().product::<i64>());
        }
    }
}
