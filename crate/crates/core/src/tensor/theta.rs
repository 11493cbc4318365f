//! `θ_n : A_n^R[k] -> Hom_R(C(V)^{⊗n}, T(V^{⊗k}))` evaluated on a concrete `V`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::input::{basis_inputs, split_input, CTensorInput, Slot};
use super::{add_pair, tensor_comult, words, FreeModule, TensorElement, TensorError, TensorPairs, Word};
use crate::algebra::{basis, AlgebraElement, Shape};
use crate::exec::Execution;
use crate::linalg::{rank, ExactMatrix};
use crate::ring::RingSpec;

fn check_ring(shape: &Shape, module: &FreeModule) -> Result<(), TensorError> {
    if shape.ring != module.ring {
        return Err(TensorError::Shape(format!(
            "ring {} vs module over {}",
            shape.ring, module.ring
        )));
    }
    Ok(())
}

/// `θ_n(a)` applied to an input whose slots are each the unit or a vector.
///
/// A monomial with flattened index sequence `i_1 ... i_{kt}` sends the input to
/// `v_{i_1} ⊗ ... ⊗ v_{i_{kt}}` when exactly the slots `i_1, ..., i_{kt}` carry
/// vectors, and to 0 otherwise.
pub fn theta_eval(a: &AlgebraElement, module: &FreeModule, input: &CTensorInput) -> Result<TensorElement, TensorError> {
    let shape = a.shape();
    check_ring(&shape, module)?;
    input.check(module, shape.n)?;
    let mut out = TensorElement::zero(*module, shape.k);
    let vector_mask: u64 = input
        .slots
        .iter()
        .enumerate()
        .filter(|(_, s)| matches!(s, Slot::Vector(_)))
        .fold(0, |m, (i, _)| m | (1 << i));
    for (m, c) in a.terms() {
        if m.mask() != vector_mask {
            continue;
        }
        let mut partial: Vec<(Vec<u8>, BigInt)> = vec![(Vec::new(), c.clone())];
        for &i in m.indices() {
            let Slot::Vector(v) = &input.slots[i as usize - 1] else {
                unreachable!("mask matched")
            };
            let mut next = Vec::with_capacity(partial.len() * module.dim);
            for (w, coeff) in &partial {
                for (b, vb) in v.iter().enumerate() {
                    if vb.is_zero() {
                        continue;
                    }
                    let mut w2 = w.clone();
                    w2.push(b as u8 + 1);
                    next.push((w2, coeff * vb));
                }
            }
            partial = next;
        }
        for (w, coeff) in partial {
            out.add_term(Word(w), coeff);
        }
    }
    Ok(out)
}

/// [`theta_eval`] on a basis input given by slot labels (`0` = unit, `i` = `e_i`).
pub fn theta_eval_basis(a: &AlgebraElement, module: &FreeModule, labels: &[u8]) -> TensorElement {
    let shape = a.shape();
    let mut out = TensorElement::zero(*module, shape.k);
    let vector_mask: u64 = labels
        .iter()
        .enumerate()
        .filter(|(_, &l)| l != 0)
        .fold(0, |m, (i, _)| m | (1 << i));
    for (m, c) in a.terms() {
        if m.mask() == vector_mask {
            let w: Vec<u8> = m.indices().iter().map(|&i| labels[i as usize - 1]).collect();
            out.add_term(Word(w), c.clone());
        }
    }
    out
}

/// Matrix of a linear map `C(V)^{⊗n} -> J_cap(V^{⊗k})` in the slot-label basis
/// of the domain and the word basis (up to `cap` letters) of the codomain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMapMatrix {
    module: FreeModule,
    n: usize,
    width: usize,
    cap: usize,
    domain: Vec<Vec<u8>>,
    codomain: Vec<Word>,
    /// Rows index the codomain, columns the domain.
    matrix: ExactMatrix,
}

impl LinearMapMatrix {
    fn build<F>(
        module: FreeModule,
        n: usize,
        width: usize,
        cap: usize,
        exec: Execution,
        column: F,
    ) -> Result<Self, TensorError>
    where
        F: Fn(&[u8]) -> Result<TensorElement, TensorError> + Sync + Send,
    {
        if width == 0 {
            return Err(TensorError::BadWidth);
        }
        let domain = basis_inputs(n, module.dim, n);
        let codomain: Vec<Word> = (0..=cap).flat_map(|t| words(module.dim, width, t)).collect();
        let index: HashMap<&Word, usize> = codomain.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let columns = exec.try_map(&domain, |labels| column(labels))?;
        let mut matrix = ExactMatrix::zeros(module.ring, codomain.len(), domain.len());
        for (c, col) in columns.iter().enumerate() {
            for (w, v) in col.terms() {
                let r = *index.get(w).ok_or(TensorError::TruncationTooSmall {
                    len: w.0.len() / width,
                    cap,
                })?;
                matrix.set(r, c, v.clone());
            }
        }
        Ok(LinearMapMatrix {
            module,
            n,
            width,
            cap,
            domain,
            codomain,
            matrix,
        })
    }

    /// The matrix of `θ_n(a)` truncated at `cap` letters; fails if some output is longer.
    pub fn of_theta(a: &AlgebraElement, module: FreeModule, cap: usize, exec: Execution) -> Result<Self, TensorError> {
        check_ring(&a.shape(), &module)?;
        let shape = a.shape();
        Self::build(module, shape.n, shape.k, cap, exec, |labels| {
            Ok(theta_eval_basis(a, &module, labels))
        })
    }

    /// [`of_theta`](Self::of_theta) with the cap set to the degree of `a`.
    pub fn of_theta_default(a: &AlgebraElement, module: FreeModule, exec: Execution) -> Result<Self, TensorError> {
        Self::of_theta(a, module, a.degree(), exec)
    }

    pub fn module(&self) -> FreeModule {
        self.module
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn domain(&self) -> &[Vec<u8>] {
        &self.domain
    }

    pub fn codomain(&self) -> &[Word] {
        &self.codomain
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    /// Image of the `c`-th domain basis element.
    pub fn column_tensor(&self, c: usize) -> TensorElement {
        let mut out = TensorElement::zero(self.module, self.width);
        for (r, w) in self.codomain.iter().enumerate() {
            let v = self.matrix.get(r, c);
            if !v.is_zero() {
                out.add_term(w.clone(), v.clone());
            }
        }
        out
    }

    fn same_spaces(&self, other: &Self) -> bool {
        self.module == other.module && self.n == other.n && self.width == other.width && self.cap == other.cap
    }
}

/// The generator `E ∘ q ∘ p_I` for a block `I = (i_1, ..., i_k)` of slots.
pub fn generator_map(
    n: usize,
    block: &[usize],
    module: FreeModule,
    cap: usize,
) -> Result<LinearMapMatrix, TensorError> {
    let width = block.len();
    if block.iter().any(|&i| i == 0 || i > n) {
        return Err(TensorError::Shape(format!("block {block:?} out of range for n = {n}")));
    }
    LinearMapMatrix::build(module, n, width, cap, Execution::Sequential, |labels| {
        let mut out = TensorElement::zero(module, width);
        // p_I: keep the slots of I, apply ε to the others.
        let others_unit = labels
            .iter()
            .enumerate()
            .all(|(s, &l)| block.contains(&(s + 1)) || l == 0);
        if !others_unit {
            return Ok(out);
        }
        let kept: Vec<u8> = block.iter().map(|&i| labels[i - 1]).collect();
        // q: projection of C(V)^{⊗k} onto V^{⊗k}.
        if kept.contains(&0) {
            return Ok(out);
        }
        // E: inclusion as a single letter.
        out.add_term(Word(kept), BigInt::one());
        Ok(out)
    })
}

/// `η ∘ ε`, the unit of the convolution algebra.
pub fn counit_map(n: usize, width: usize, module: FreeModule, cap: usize) -> Result<LinearMapMatrix, TensorError> {
    LinearMapMatrix::build(module, n, width, cap, Execution::Sequential, |labels| {
        let mut out = TensorElement::zero(module, width);
        if labels.iter().all(|&l| l == 0) {
            out.add_term(Word::empty(), BigInt::one());
        }
        Ok(out)
    })
}

/// `f * g = μ ∘ (f ⊗ g) ∘ ψ` on a common domain and codomain.
pub fn convolution(f: &LinearMapMatrix, g: &LinearMapMatrix) -> Result<LinearMapMatrix, TensorError> {
    if !f.same_spaces(g) {
        return Err(TensorError::Shape(
            "convolution factors have different domains or codomains".into(),
        ));
    }
    let position: HashMap<&Vec<u8>, usize> = f.domain.iter().enumerate().map(|(i, d)| (d, i)).collect();
    let f_cols: Vec<TensorElement> = (0..f.domain.len()).map(|c| f.column_tensor(c)).collect();
    let g_cols: Vec<TensorElement> = (0..g.domain.len()).map(|c| g.column_tensor(c)).collect();
    LinearMapMatrix::build(f.module, f.n, f.width, f.cap, Execution::Sequential, |labels| {
        let mut out = TensorElement::zero(f.module, f.width);
        for (l, r) in split_input(labels) {
            let prod = f_cols[position[&l]].mul(&g_cols[position[&r]])?;
            for (w, c) in prod.terms() {
                out.add_term(w.clone(), c.clone());
            }
        }
        Ok(out)
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoalgebraCheck {
    pub counit_ok: bool,
    pub comult_ok: bool,
    pub inputs_checked: usize,
    /// Slot labels of the first input where a condition fails.
    pub first_failure: Option<Vec<u8>>,
}

impl CoalgebraCheck {
    pub fn holds(&self) -> bool {
        self.counit_ok && self.comult_ok
    }
}

/// Checks `ψ ∘ θ(a) = (θ(a) ⊗ θ(a)) ∘ ψ` and `ε ∘ θ(a) = ε` on every basis
/// input of `C(V)^{⊗n}` with at most `max_vectors` vector slots.
pub fn is_coalgebra_map(
    a: &AlgebraElement,
    module: FreeModule,
    max_vectors: usize,
    exec: Execution,
) -> Result<CoalgebraCheck, TensorError> {
    let shape = a.shape();
    check_ring(&shape, &module)?;
    let ring = module.ring;
    let inputs = basis_inputs(shape.n, module.dim, max_vectors.min(shape.n));
    let results = exec.map(&inputs, |labels| {
        let image = theta_eval_basis(a, &module, labels);
        let eps_in = BigInt::from(labels.iter().all(|&l| l == 0) as u8);
        let counit_ok = image.counit() == ring.reduce(eps_in);
        let lhs = tensor_comult(&image);
        let mut rhs = TensorPairs::new();
        for (l, r) in split_input(labels) {
            let fl = theta_eval_basis(a, &module, &l);
            let fr = theta_eval_basis(a, &module, &r);
            for (wl, cl) in fl.terms() {
                for (wr, cr) in fr.terms() {
                    add_pair(&mut rhs, ring, (wl.clone(), wr.clone()), cl * cr);
                }
            }
        }
        (counit_ok, lhs == rhs)
    });
    let mut check = CoalgebraCheck {
        counit_ok: true,
        comult_ok: true,
        inputs_checked: inputs.len(),
        first_failure: None,
    };
    for (labels, (cu, cm)) in inputs.iter().zip(results) {
        check.counit_ok &= cu;
        check.comult_ok &= cm;
        if !(cu && cm) && check.first_failure.is_none() {
            check.first_failure = Some(labels.clone());
        }
    }
    Ok(check)
}

/// Evaluates every basis monomial of `A_n^R[k]` on the designated inputs
/// `z_p = 1` (`p ∉ J`), `z_j = e_j` (`j ∈ J`) for all `J ⊆ {1..n}` and
/// reports whether the resulting matrix has full column rank.
pub fn verify_theta_injectivity_block(
    ring: RingSpec,
    n: usize,
    k: usize,
    m: usize,
    exec: Execution,
) -> Result<bool, TensorError> {
    if m < n {
        return Err(TensorError::Precondition(format!("need dim V = {m} >= n = {n}")));
    }
    let shape = Shape::new(ring, n, k)?;
    let module = FreeModule::new(ring, m)?;
    let monomials: Vec<_> = (0..=n / k).flat_map(|t| basis(n, k, t)).collect();
    let subsets: Vec<u64> = (0u64..(1u64 << n))
        .filter(|s| (s.count_ones() as usize).is_multiple_of(k))
        .collect();
    let blocks = exec.try_map(&subsets, |&mask| -> Result<Vec<Vec<BigInt>>, TensorError> {
        let labels: Vec<u8> = (0..n)
            .map(|p| if mask & (1 << p) != 0 { p as u8 + 1 } else { 0 })
            .collect();
        let rows_words = words(m, k, mask.count_ones() as usize / k);
        let index: HashMap<&Word, usize> = rows_words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut rows = vec![vec![BigInt::zero(); monomials.len()]; rows_words.len()];
        for (c, mono) in monomials.iter().enumerate() {
            let a = AlgebraElement::from_monomial(shape, mono.clone(), 1)?;
            let input = CTensorInput::from_labels(m, &labels);
            let out = theta_eval(&a, &module, &input)?;
            for (w, v) in out.terms() {
                rows[index[w]][c] = v.clone();
            }
        }
        Ok(rows)
    })?;
    let rows: Vec<Vec<BigInt>> = blocks.into_iter().flatten().collect();
    let mat = ExactMatrix::from_rows_with_cols(ring, monomials.len(), rows)?;
    Ok(rank(&mat)? == monomials.len())
}

/// [`verify_theta_injectivity_block`] for the Cohen algebra (`k = 1`).
pub fn verify_theta_injectivity(ring: RingSpec, n: usize, m: usize, exec: Execution) -> Result<bool, TensorError> {
    verify_theta_injectivity_block(ring, n, 1, m, exec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_element;
    use crate::group::GroupElement;
    use crate::tensor::{parse_input, parse_tensor};
    use proptest::prelude::*;

    fn sh(n: usize) -> Shape {
        Shape::cohen(RingSpec::Z, n).unwrap()
    }

    fn v(dim: usize) -> FreeModule {
        FreeModule::new(RingSpec::Z, dim).unwrap()
    }

    fn eval(n: usize, a: &str, input: &str) -> String {
        let a = parse_element(sh(n), a).unwrap();
        let z = parse_input(input).unwrap();
        theta_eval(&a, &v(2), &z).unwrap().to_string()
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(eval(2, "y1", "[1,2] (x) 1"), "e1 + 2*e2");
        assert_eq!(eval(2, "y1", "[1,2] (x) [0,1]"), "0");
        assert_eq!(eval(2, "y1.y2", "[1,0] (x) [0,1]"), "e1.e2");
        assert_eq!(eval(2, "y2.y1", "[1,0] (x) [0,1]"), "e2.e1");
        assert_eq!(eval(2, "1", "1 (x) 1"), "1");
        assert_eq!(eval(2, "3", "1 (x) [1,1]"), "0");
        assert_eq!(eval(2, "y1.y2", "[1,1] (x) [1,-1]"), "e1.e1 - e1.e2 + e2.e1 - e2.e2");
    }

    #[test]
    fn block_evaluation() {
        let s = Shape::new(RingSpec::Z, 4, 2).unwrap();
        let a = parse_element(s, "{1|2}.{3|4}").unwrap();
        let z = parse_input("[1,0] (x) [0,1] (x) [0,1] (x) [1,0]").unwrap();
        assert_eq!(theta_eval(&a, &v(2), &z).unwrap().to_string(), "(1,2).(2,1)");
    }

    #[test]
    fn convolution_examples() {
        let m = v(2);
        let y1 = generator_map(2, &[1], m, 2).unwrap();
        let y2 = generator_map(2, &[2], m, 2).unwrap();
        let unit = counit_map(2, 1, m, 2).unwrap();
        assert_eq!(convolution(&y1, &unit).unwrap(), y1);
        assert_eq!(convolution(&unit, &unit).unwrap(), unit);
        let prod = convolution(&y1, &y2).unwrap();
        let direct =
            LinearMapMatrix::of_theta(&parse_element(sh(2), "y1.y2").unwrap(), m, 2, Execution::Sequential).unwrap();
        assert_eq!(prod, direct);
        let y1c = generator_map(2, &[1], m, 1).unwrap();
        let y2c = generator_map(2, &[2], m, 1).unwrap();
        assert!(matches!(
            convolution(&y1c, &y2c),
            Err(TensorError::TruncationTooSmall { .. })
        ));
    }

    #[test]
    fn theta_matrix_needs_room() {
        let a = parse_element(sh(2), "y1.y2").unwrap();
        assert!(matches!(
            LinearMapMatrix::of_theta(&a, v(2), 1, Execution::Sequential),
            Err(TensorError::TruncationTooSmall { .. })
        ));
        let t = LinearMapMatrix::of_theta_default(&a, v(2), Execution::Parallel).unwrap();
        assert_eq!(t.cap(), 2);
        let c = t.domain().iter().position(|d| d == &vec![2, 1]).unwrap();
        assert_eq!(t.column_tensor(c), parse_tensor(v(2), 1, "e2.e1").unwrap());
    }

    #[test]
    fn coalgebra_examples() {
        let m = v(2);
        let e = GroupElement::parse(sh(2), "x1").unwrap();
        assert!(is_coalgebra_map(e.canon(), m, 2, Execution::Sequential)
            .unwrap()
            .holds());
        let y1 = parse_element(sh(2), "y1").unwrap();
        let r = is_coalgebra_map(&y1, m, 2, Execution::Sequential).unwrap();
        assert!(!r.counit_ok);
        let g = GroupElement::parse(sh(3), "x1^2 [x2,x3^-1] x3 x1^-5").unwrap();
        assert!(is_coalgebra_map(g.canon(), m, 3, Execution::Parallel).unwrap().holds());
        let not_grouplike = parse_element(sh(2), "1 + y1.y2").unwrap();
        assert!(
            !is_coalgebra_map(&not_grouplike, m, 2, Execution::Sequential)
                .unwrap()
                .comult_ok
        );
    }

    #[test]
    fn injectivity_examples() {
        for (n, m) in [(1, 1), (2, 2), (3, 3), (2, 3)] {
            assert!(verify_theta_injectivity(RingSpec::Z, n, m, Execution::Parallel).unwrap());
        }
        assert!(verify_theta_injectivity(RingSpec::modular(3).unwrap(), 3, 3, Execution::Sequential).unwrap());
        assert!(verify_theta_injectivity_block(RingSpec::Z, 4, 2, 4, Execution::Parallel).unwrap());
        assert!(matches!(
            verify_theta_injectivity(RingSpec::Z, 3, 2, Execution::Sequential),
            Err(TensorError::Precondition(_))
        ));
    }

    fn small(n: usize) -> impl Strategy<Value = AlgebraElement> {
        proptest::collection::vec((proptest::collection::vec(1u8..=n as u8, 0..=2), -3i64..4), 0..5).prop_map(
            move |ts| AlgebraElement::from_terms(sh(n), ts.into_iter().map(|(m, c)| (m, BigInt::from(c)))).unwrap(),
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn theta_is_multiplicative(a in small(3), b in small(3)) {
            let m = v(2);
            let ta = LinearMapMatrix::of_theta(&a, m, 4, Execution::Sequential).unwrap();
            let tb = LinearMapMatrix::of_theta(&b, m, 4, Execution::Sequential).unwrap();
            let tab = LinearMapMatrix::of_theta(&a.mul(&b).unwrap(), m, 4, Execution::Sequential).unwrap();
            prop_assert_eq!(convolution(&ta, &tb).unwrap(), tab);
        }

        #[test]
        fn theta_is_linear_in_the_input(a in small(2), c1 in -3i64..4, c2 in -3i64..4) {
            let m = v(2);
            let z = |x: i64, y: i64| CTensorInput { slots: vec![Slot::Vector(vec![BigInt::from(x), BigInt::from(y)]), Slot::Vector(vec![BigInt::from(1), BigInt::from(1)])] };
            let lhs = theta_eval(&a, &m, &z(c1 + c2, 2 * c1)).unwrap();
            let rhs = theta_eval(&a, &m, &z(c1, c1)).unwrap().add(&theta_eval(&a, &m, &z(c2, c1)).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
