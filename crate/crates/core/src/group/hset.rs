//! Equalizer subgroups `H_n`, `H_n^{(l)}`, `H_n^{(l),(k)}`, the maps `d_{k,n}`
//! between them and the lift `α -> α_{k,n}`.

use super::{Caveat, GroupElement, GroupError};
use crate::algebra::WindowConvention;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipReport {
    pub member: bool,
    /// Human-readable reasons for a negative answer.
    pub failures: Vec<String>,
    pub caveats: Vec<Caveat>,
}

impl MembershipReport {
    fn new(g: &GroupElement) -> Self {
        MembershipReport {
            member: true,
            failures: Vec::new(),
            caveats: g.caveats(),
        }
    }

    fn fail(&mut self, why: String) {
        self.member = false;
        self.failures.push(why);
    }
}

/// `g ∈ H_n`: all faces `p_1(g), ..., p_n(g)` coincide.
pub fn is_member_h(g: &GroupElement) -> Result<MembershipReport, GroupError> {
    let mut report = MembershipReport::new(g);
    let n = g.shape().n;
    if n == 0 {
        return Ok(report);
    }
    let first = g.proj_p(1)?;
    for j in 2..=n {
        if g.proj_p(j)? != first {
            report.fail(format!("p_1 and p_{j} differ"));
        }
    }
    Ok(report)
}

/// `g ∈ H_n^{(l)}` on `l n` generators: `g` lies in every `Ker p_{jl+i}` and
/// all window projections `p_{j+{1..l}}`, `0 <= j < n`, agree.
pub fn is_member_h_l(g: &GroupElement, l: usize, conv: WindowConvention) -> Result<MembershipReport, GroupError> {
    let total = g.shape().n;
    if l == 0 || !total.is_multiple_of(l) {
        return Err(GroupError::Precondition(format!(
            "window length {l} does not divide {total}"
        )));
    }
    let n = total / l;
    let mut report = MembershipReport::new(g);
    if conv == WindowConvention::Verbatim && l > 1 {
        report.caveats.push(Caveat::WindowShiftVerbatim);
    }
    for j in 0..n {
        for i in 1..=l {
            if !g.proj_p(j * l + i)?.is_identity() {
                report.fail(format!("p_{} is not trivial", j * l + i));
            }
        }
    }
    if n > 0 {
        let first = g.block_proj(conv, l, 0)?;
        for j in 1..n {
            if g.block_proj(conv, l, j)? != first {
                report.fail(format!("window projections 0 and {j} differ"));
            }
        }
    }
    Ok(report)
}

/// `g ∈ H_n^{(l),(k)}`: the `H^{(l)}` conditions in `K_{ln}(k)`.
pub fn is_member_h_lk(
    g: &GroupElement,
    l: usize,
    k: usize,
    conv: WindowConvention,
) -> Result<MembershipReport, GroupError> {
    if g.shape().k != k {
        return Err(GroupError::Precondition(format!(
            "element has block size {}, expected {k}",
            g.shape().k
        )));
    }
    is_member_h_l(g, l, conv)
}

/// `d_{k,n} : H_n -> H_k`, projecting one face at a time and checking at every
/// level that all faces agree.
pub fn descend(g: &GroupElement, k: usize) -> Result<GroupElement, GroupError> {
    let mut cur = g.clone();
    if k > cur.shape().n {
        return Err(GroupError::Precondition(format!(
            "cannot descend from level {} to {k}",
            cur.shape().n
        )));
    }
    while cur.shape().n > k {
        let report = is_member_h(&cur)?;
        if !report.member {
            return Err(GroupError::Precondition(format!(
                "not in H_{}: {}",
                cur.shape().n,
                report.failures.join("; ")
            )));
        }
        cur = cur.proj_p(cur.shape().n)?;
    }
    Ok(cur)
}

/// `(n-k)`-subsets of `1..=n` in lexicographic order read from the right
/// (compare largest elements first, i.e. colex).
fn subsets_colex(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            go(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    go(1, n, size, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    out
}

/// `α_{k,n} = ∏ s_{i_{n-k}} ... s_{i_1} α` over `i_1 < ... < i_{n-k}` in colex order,
/// for `α ∈ H_k` with trivial faces.
pub fn lift_h(alpha: &GroupElement, n: usize) -> Result<GroupElement, GroupError> {
    let k = alpha.shape().n;
    if n < k {
        return Err(GroupError::Precondition(format!("target level {n} is below {k}")));
    }
    for j in 1..=k {
        if !alpha.proj_p(j)?.is_identity() {
            return Err(GroupError::Precondition(format!("p_{j}(alpha) is not trivial")));
        }
    }
    let mut out = GroupElement::identity(alpha.shape().with_n(n));
    for subset in subsets_colex(n, n - k) {
        let mut factor = alpha.clone();
        for &i in &subset {
            factor = factor.inject_s(i)?;
        }
        out = out.mul(&factor)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Shape;
    use crate::ring::RingSpec;

    fn g(n: usize, s: &str) -> GroupElement {
        GroupElement::parse(Shape::cohen(RingSpec::Z, n).unwrap(), s).unwrap()
    }

    #[test]
    fn membership_examples() {
        assert!(is_member_h(&g(2, "[x1,x2]")).unwrap().member);
        assert!(!is_member_h(&g(2, "x1")).unwrap().member);
        assert!(
            is_member_h(&GroupElement::identity(Shape::cohen(RingSpec::Z, 4).unwrap()))
                .unwrap()
                .member
        );
        assert!(is_member_h(&g(2, "x1 x2")).unwrap().member);
    }

    #[test]
    fn colex_order() {
        let s = subsets_colex(4, 2);
        let want: Vec<Vec<usize>> = vec![vec![1, 2], vec![1, 3], vec![2, 3], vec![1, 4], vec![2, 4], vec![3, 4]];
        assert_eq!(s, want);
    }

    #[test]
    fn lift_examples() {
        let a = g(2, "[x1,x2]");
        assert_eq!(lift_h(&a, 2).unwrap(), a);
        let lifted = lift_h(&a, 3).unwrap();
        assert_eq!(lifted.to_string(), "[x2,x3] [x1,x3] [x1,x2]");
        assert!(is_member_h(&lifted).unwrap().member);
        assert_eq!(descend(&lifted, 2).unwrap(), a);
        let id = GroupElement::identity(Shape::cohen(RingSpec::Z, 2).unwrap());
        assert!(lift_h(&id, 4).unwrap().is_identity());
        assert!(lift_h(&g(2, "x1"), 3).is_err());
    }

    #[test]
    fn lifts_of_deeper_kernel_elements() {
        for (w, n) in [
            ("[x1,x2,x3]", 5),
            ("[x2,x1,x3] ([x1,x3,x2])^2", 4),
            ("([x1^3,x2])^2", 4),
        ] {
            let k = if w.contains("x3") { 3 } else { 2 };
            let a = g(k, w);
            let lifted = lift_h(&a, n).unwrap();
            assert!(is_member_h(&lifted).unwrap().member, "{w}");
            assert_eq!(descend(&lifted, k).unwrap(), a, "{w}");
        }
    }

    #[test]
    fn h_l_conditions() {
        let s = Shape::cohen(RingSpec::Z, 4).unwrap();
        let brunnian = GroupElement::parse(s, "[x1,x2,x3,x4]").unwrap();
        let r = is_member_h_l(&brunnian, 2, WindowConvention::Verbatim).unwrap();
        assert!(r.member);
        assert!(r.caveats.contains(&Caveat::WindowShiftVerbatim));
        let r = is_member_h_l(
            &GroupElement::parse(s, "x1").unwrap(),
            2,
            WindowConvention::BlockAligned,
        )
        .unwrap();
        assert!(!r.member);
        assert!(is_member_h_l(&brunnian, 3, WindowConvention::Verbatim).is_err());
        let sk = Shape::new(RingSpec::Z, 4, 2).unwrap();
        let e = GroupElement::identity(sk);
        assert!(is_member_h_lk(&e, 2, 2, WindowConvention::Verbatim).unwrap().member);
        assert!(is_member_h_lk(&e, 2, 1, WindowConvention::Verbatim).is_err());
    }
}
