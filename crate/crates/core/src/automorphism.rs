//! Automorphisms of the Boolean-reduced algebra.
//!
//! An automorphism is stored as the images of the variables. The
//! constructors here (elementary maps, permutations, composition and the
//! signing extension) only ever produce maps that permute the Boolean cube,
//! which is what makes positive counts invariant.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};
use crate::scalar::Coefficient;
use crate::text::{parse_block, parse_nvars_header, split_blocks, write_polynomial};

/// Largest variable count for which [`Automorphism::cube_permutation`]
/// will enumerate the cube.
pub const CUBE_CHECK_MAX_VARS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism<C> {
    images: Vec<Polynomial<C>>,
}

/// True iff `h * h == h`, i.e. `h` is 0/1-valued on the cube.
pub fn is_indicator<C: Coefficient>(h: &Polynomial<C>) -> Result<bool> {
    h.is_idempotent()
}

/// `x + h - 2 x h`, which is `x XOR h` on the cube.
fn xor_with<C: Coefficient>(x: &Polynomial<C>, h: &Polynomial<C>) -> Result<Polynomial<C>> {
    let twice = x.mul(h)?.scale(&C::from_small(2))?;
    x.add(h)?.sub(&twice)
}

impl<C: Coefficient> Automorphism<C> {
    pub fn identity(nvars: usize) -> Self {
        let images = (1..=nvars)
            .map(|i| Polynomial::var(nvars, i).expect("index within range"))
            .collect();
        Automorphism { images }
    }

    /// The map sending `x_k` to `x_k + h - 2 x_k h` and fixing every other
    /// variable. `h` must be an indicator not involving `x_k`.
    pub fn elementary(k: usize, h: &Polynomial<C>) -> Result<Self> {
        let nvars = h.nvars();
        if k == 0 || k > nvars {
            return Err(Error::VariableOutOfRange { index: k, nvars });
        }
        if h.depends_on(k) {
            return Err(Error::InvalidGenerator(format!("h depends on x{k}")));
        }
        if !is_indicator(h)? {
            return Err(Error::InvalidGenerator("h is not 0/1-valued on the cube".into()));
        }
        let mut phi = Self::identity(nvars);
        phi.images[k - 1] = xor_with(&phi.images[k - 1], h)?;
        Ok(phi)
    }

    /// `x_i -> x_{perm[i-1]}`; `perm` holds 1-based indices.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let nvars = perm.len();
        let mut seen = vec![false; nvars];
        for &p in perm {
            if p == 0 || p > nvars {
                return Err(Error::InvalidPermutation(format!("index {p} outside 1..={nvars}")));
            }
            if std::mem::replace(&mut seen[p - 1], true) {
                return Err(Error::InvalidPermutation(format!("index {p} repeated")));
            }
        }
        let images = perm
            .iter()
            .map(|&p| Polynomial::var(nvars, p))
            .collect::<Result<_>>()?;
        Ok(Automorphism { images })
    }

    /// Wraps raw images without checking that they define an automorphism.
    /// Used when loading keys; callers may check with
    /// [`is_cube_bijection`](Self::is_cube_bijection).
    pub fn from_images_unchecked(images: Vec<Polynomial<C>>) -> Result<Self> {
        let nvars = images.len();
        if let Some(bad) = images.iter().find(|p| p.nvars() != nvars) {
            return Err(Error::Dimension { expected: nvars, found: bad.nvars() });
        }
        Ok(Automorphism { images })
    }

    pub fn nvars(&self) -> usize {
        self.images.len()
    }

    /// `images()[i]` is the image of `x_{i+1}`.
    pub fn images(&self) -> &[Polynomial<C>] {
        &self.images
    }

    pub fn image(&self, index: usize) -> Option<&Polynomial<C>> {
        index.checked_sub(1).and_then(|i| self.images.get(i))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.nvars())
    }

    /// `p(phi(x_1), ..., phi(x_n))`.
    pub fn apply(&self, p: &Polynomial<C>) -> Result<Polynomial<C>> {
        if p.nvars() != self.nvars() {
            return Err(Error::Dimension { expected: self.nvars(), found: p.nvars() });
        }
        p.substitute(&self.images)
    }

    /// The automorphism that applies `inner` first and then `outer`:
    /// `compose(g, f).apply(p) == g.apply(&f.apply(p))`.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self> {
        if outer.nvars() != inner.nvars() {
            return Err(Error::Dimension { expected: outer.nvars(), found: inner.nvars() });
        }
        let images = inner
            .images
            .iter()
            .map(|img| img.substitute(&outer.images))
            .collect::<Result<_>>()?;
        Ok(Automorphism { images })
    }

    /// Adds the variable `x_{n+1}` and sends it to
    /// `x_{n+1} + r - 2 x_{n+1} r`; the old variables keep their images.
    pub fn extend_for_signing(&self, r: &Polynomial<C>) -> Result<Self> {
        let n = self.nvars();
        let r = match r.nvars() {
            m if m == n => r.widen(n + 1)?,
            m if m == n + 1 => {
                if r.depends_on(n + 1) {
                    return Err(Error::InvalidGenerator(format!("r depends on x{}", n + 1)));
                }
                r.clone()
            }
            m => return Err(Error::Dimension { expected: n, found: m }),
        };
        if !is_indicator(&r)? {
            return Err(Error::InvalidGenerator("r is not 0/1-valued on the cube".into()));
        }
        let mut images = self
            .images
            .iter()
            .map(|img| img.widen(n + 1))
            .collect::<Result<Vec<_>>>()?;
        images.push(xor_with(&Polynomial::var(n + 1, n + 1)?, &r)?);
        Ok(Automorphism { images })
    }

    /// Image of a cube vertex, or `None` if some image leaves `{0, 1}`.
    pub fn map_tuple(&self, bits: u64) -> Result<Option<u64>> {
        let (zero, one) = (C::zero(), C::one());
        let mut out = 0u64;
        for (i, img) in self.images.iter().enumerate() {
            let v = img.evaluate_bits(bits)?;
            if v == one {
                out |= 1 << i;
            } else if v != zero {
                return Ok(None);
            }
        }
        Ok(Some(out))
    }

    /// The induced map on all `2^n` vertices, or `None` if it leaves the
    /// cube.
    pub fn cube_permutation(&self) -> Result<Option<Vec<u64>>> {
        let n = self.nvars();
        if n > CUBE_CHECK_MAX_VARS {
            return Err(Error::Capacity { nvars: n, max: CUBE_CHECK_MAX_VARS });
        }
        (0..1u64 << n).map(|t| self.map_tuple(t)).collect()
    }

    /// Exhaustively checks that the induced map is a bijection of the cube.
    pub fn is_cube_bijection(&self) -> Result<bool> {
        let Some(map) = self.cube_permutation()? else {
            return Ok(false);
        };
        let mut hit = vec![false; map.len()];
        for v in map {
            if std::mem::replace(&mut hit[v as usize], true) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Total number of monomials over all images.
    pub fn term_count(&self) -> usize {
        self.images.iter().map(Polynomial::len).sum()
    }

    /// Union of the supports of all images.
    pub fn support(&self) -> Monomial {
        self.images
            .iter()
            .fold(Monomial::ONE, |acc, p| acc.mul(p.support()))
    }

    /// Header `nvars=<k>` and then one polynomial block per image, blocks
    /// separated by blank lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "nvars={}", self.nvars());
        for img in &self.images {
            out.push('\n');
            write_polynomial(&mut out, img);
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let blocks = split_blocks(text);
        Self::from_blocks(&blocks)
    }

    pub(crate) fn from_blocks(blocks: &[crate::text::Block<'_>]) -> Result<Self> {
        let (header, rest) = blocks
            .split_first()
            .ok_or_else(|| Error::parse(1, "empty automorphism"))?;
        if header.lines.len() != 1 {
            return Err(Error::parse(
                header.first_line + 1,
                "automorphism header must stand alone",
            ));
        }
        let nvars = parse_nvars_header(header.lines[0], header.first_line)?;
        if rest.len() != nvars {
            let line = rest.get(nvars).map_or(header.first_line, |b| b.first_line);
            return Err(Error::parse(
                line,
                format!("expected {nvars} image blocks, found {}", rest.len()),
            ));
        }
        let mut images = Vec::with_capacity(nvars);
        for block in rest {
            let img: Polynomial<C> = parse_block(block)?;
            if img.nvars() != nvars {
                return Err(Error::parse(
                    block.first_line,
                    format!("image has nvars={}, expected {nvars}", img.nvars()),
                ));
            }
            images.push(img);
        }
        Ok(Automorphism { images })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = Polynomial<i64>;
    type A = Automorphism<i64>;

    fn x(n: usize, i: usize) -> P {
        P::var(n, i).unwrap()
    }

    #[test]
    fn indicator_examples() {
        assert!(is_indicator(&x(2, 1)).unwrap());
        assert!(is_indicator(&x(2, 1).complement().unwrap()).unwrap());
        assert!(!is_indicator(&x(2, 1).add(&x(2, 2)).unwrap()).unwrap());
    }

    #[test]
    fn elementary_with_zero_is_identity() {
        assert!(A::elementary(2, &P::zero(3)).unwrap().is_identity());
    }

    #[test]
    fn elementary_flip_on_two_variables() {
        let alpha = A::elementary(2, &x(2, 1)).unwrap();
        assert_eq!(alpha.image(2).unwrap().to_string(), "x1 + x2 - 2*x1*x2");
        // bits: x1 is bit 0, x2 is bit 1
        let expect = [(0b00, 0b00), (0b01, 0b11), (0b10, 0b10), (0b11, 0b01)];
        for (from, to) in expect {
            assert_eq!(alpha.map_tuple(from).unwrap(), Some(to));
        }
        for t in 0..4 {
            let once = alpha.map_tuple(t).unwrap().unwrap();
            assert_eq!(alpha.map_tuple(once).unwrap(), Some(t));
        }
        assert_eq!(alpha.apply(&x(2, 2)).unwrap(), alpha.image(2).unwrap().clone());
    }

    #[test]
    fn elementary_rejects_bad_generators() {
        assert!(matches!(A::elementary(1, &x(2, 1)), Err(Error::InvalidGenerator(_))));
        let not_indicator = x(3, 1).add(&x(3, 2)).unwrap();
        assert!(matches!(A::elementary(3, &not_indicator), Err(Error::InvalidGenerator(_))));
        assert!(matches!(A::elementary(4, &x(3, 1)), Err(Error::VariableOutOfRange { .. })));
    }

    #[test]
    fn permutation_examples() {
        assert!(A::permutation(&[1, 2, 3]).unwrap().is_identity());
        let swap = A::permutation(&[2, 1]).unwrap();
        assert_eq!(swap.apply(&x(2, 1)).unwrap(), x(2, 2));
        assert!(A::compose(&swap, &swap).unwrap().is_identity());
        assert!(matches!(A::permutation(&[1, 1]), Err(Error::InvalidPermutation(_))));
        assert!(matches!(A::permutation(&[1, 3]), Err(Error::InvalidPermutation(_))));
    }

    #[test]
    fn compose_with_identity() {
        let alpha = A::elementary(1, &x(3, 2).mul(&x(3, 3)).unwrap()).unwrap();
        let id = A::identity(3);
        assert_eq!(A::compose(&id, &alpha).unwrap(), alpha);
        assert_eq!(A::compose(&alpha, &id).unwrap(), alpha);
        assert!(A::compose(&alpha, &A::identity(2)).is_err());
    }

    #[test]
    fn compose_order_matches_sequential_application() {
        let f = A::elementary(2, &x(3, 1)).unwrap();
        let g = A::permutation(&[3, 1, 2]).unwrap();
        let p = x(3, 1).mul(&x(3, 2)).unwrap().sub(&x(3, 3)).unwrap();
        let gf = A::compose(&g, &f).unwrap();
        assert_eq!(gf.apply(&p).unwrap(), g.apply(&f.apply(&p).unwrap()).unwrap());
        let fg = A::compose(&f, &g).unwrap();
        assert_ne!(gf, fg);
    }

    #[test]
    fn extension_examples() {
        let phi = A::elementary(1, &x(3, 3)).unwrap();
        let ext = phi.extend_for_signing(&P::zero(3)).unwrap();
        assert_eq!(ext.nvars(), 4);
        assert_eq!(ext.image(4).unwrap(), &x(4, 4));

        let r = x(3, 2).complement().unwrap();
        let ext = phi.extend_for_signing(&r).unwrap();
        for t in 0..16u64 {
            let mapped = ext.map_tuple(t).unwrap().unwrap();
            let r_val = r.evaluate_bits(t).unwrap() as u64;
            assert_eq!(mapped >> 3, (t >> 3) ^ r_val);
        }
        let p = x(3, 1).mul(&x(3, 2)).unwrap();
        assert_eq!(ext.apply(&p.widen(4).unwrap()).unwrap(), phi.apply(&p).unwrap().widen(4).unwrap());

        assert!(matches!(phi.extend_for_signing(&x(4, 4)), Err(Error::InvalidGenerator(_))));
        let two = x(3, 1).add(&x(3, 2)).unwrap();
        assert!(matches!(phi.extend_for_signing(&two), Err(Error::InvalidGenerator(_))));
        assert!(phi.extend_for_signing(&x(5, 1)).is_err());
    }

    #[test]
    fn non_automorphism_detected() {
        let collapse = A::from_images_unchecked(vec![x(2, 1), x(2, 1)]).unwrap();
        assert!(!collapse.is_cube_bijection().unwrap());
        let off_cube = A::from_images_unchecked(vec![x(2, 1).add(&x(2, 2)).unwrap(), x(2, 2)])
            .unwrap();
        assert_eq!(off_cube.map_tuple(0b11).unwrap(), None);
        assert!(!off_cube.is_cube_bijection().unwrap());
    }

    #[test]
    fn text_round_trip() {
        let phi = A::compose(
            &A::permutation(&[2, 3, 1]).unwrap(),
            &A::elementary(1, &x(3, 2).complement().unwrap()).unwrap(),
        )
        .unwrap();
        let text = phi.to_text();
        assert!(text.starts_with("nvars=3\n\nnvars=3\n"));
        assert_eq!(A::from_text(&text).unwrap(), phi);
        assert!(A::from_text("nvars=2\n\nnvars=2\n1:1\n").is_err());
        assert!(A::from_text("nvars=1\n\nnvars=2\n1:1\n").is_err());
    }
}
