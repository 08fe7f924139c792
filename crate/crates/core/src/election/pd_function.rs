use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PdKind {
    Arbitrary,
    Constant(Rational),
    /// `f(ℓ) = 1`.
    Unit,
    /// `f(ℓ) = ℓ − 1`.
    NearlyPerfect,
    /// `f(ℓ) = ℓ`.
    Perfect,
}

/// A proportionality-degree function `f: [k] → ℚ`, stored as `f(1), …, f(k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdFunction {
    values: Vec<Rational>,
    kind: PdKind,
}

impl PdFunction {
    /// Requires `k ≥ 1` values, each in `[0, k]`.
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        let k = values.len();
        if k == 0 {
            return Err(Error::invalid("PD function needs at least one value"));
        }
        let upper = Rational::from(k as i64);
        if let Some((i, v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| v.is_negative() || **v > upper)
        {
            return Err(Error::invalid(format!(
                "f({}) = {v} lies outside [0, {k}]",
                i + 1
            )));
        }
        Ok(PdFunction {
            values,
            kind: PdKind::Arbitrary,
        })
    }

    pub fn constant(k: usize, x: Rational) -> Result<Self> {
        let mut f = PdFunction::new(vec![x.clone(); k])?;
        f.kind = PdKind::Constant(x);
        Ok(f)
    }

    pub fn zero(k: usize) -> Result<Self> {
        PdFunction::constant(k, Rational::zero())
    }

    pub fn unit(k: usize) -> Result<Self> {
        let mut f = PdFunction::new(vec![Rational::from(1); k])?;
        f.kind = PdKind::Unit;
        Ok(f)
    }

    pub fn nearly_perfect(k: usize) -> Result<Self> {
        let mut f = PdFunction::new((0..k as i64).map(Rational::from).collect())?;
        f.kind = PdKind::NearlyPerfect;
        Ok(f)
    }

    pub fn perfect(k: usize) -> Result<Self> {
        let mut f = PdFunction::new((1..=k as i64).map(Rational::from).collect())?;
        f.kind = PdKind::Perfect;
        Ok(f)
    }

    /// Parses whitespace-separated `p/q` or integer values; `#` lines are
    /// comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim_start().starts_with('#') {
                continue;
            }
            for tok in line.split_whitespace() {
                values.push(tok.parse().map_err(|e: Error| Error::parse(i + 1, e.to_string()))?);
            }
        }
        PdFunction::new(values)
    }

    pub fn k(&self) -> usize {
        self.values.len()
    }

    /// `f(ℓ)` for `ℓ ∈ [1, k]`.
    pub fn at(&self, ell: usize) -> &Rational {
        &self.values[ell - 1]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn kind(&self) -> &PdKind {
        &self.kind
    }

    /// The constant value if all entries are equal.
    pub fn as_constant(&self) -> Option<&Rational> {
        let first = &self.values[0];
        self.values.iter().all(|v| v == first).then_some(first)
    }

    pub fn to_text(&self) -> String {
        let mut s = self
            .values
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn special_classes() {
        let np = PdFunction::nearly_perfect(3).unwrap();
        assert_eq!(np.values(), &[0.into(), 1.into(), 2.into()]);
        assert_eq!(np.kind(), &PdKind::NearlyPerfect);
        let p = PdFunction::perfect(3).unwrap();
        assert_eq!(p.at(3), &Rational::from(3));
        assert_eq!(PdFunction::unit(4).unwrap().as_constant(), Some(&Rational::from(1)));
        assert!(PdFunction::perfect(3).unwrap().as_constant().is_none());
    }

    #[test]
    fn range_is_enforced() {
        assert!(PdFunction::new(vec![Rational::from(3)]).is_err());
        assert!(PdFunction::new(vec![Rational::new(-1, 2), 0.into()]).is_err());
        assert!(PdFunction::new(vec![]).is_err());
    }

    #[test]
    fn parses_file_text() {
        let f = PdFunction::parse("# f\n1/2 1\n3/2\n").unwrap();
        assert_eq!(f.k(), 3);
        assert_eq!(f.at(1), &Rational::new(1, 2));
        assert_eq!(PdFunction::parse(&f.to_text()).unwrap(), PdFunction::new(f.values().to_vec()).unwrap());
        let err = PdFunction::parse("1\n1/x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }
}
