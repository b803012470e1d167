use std::fmt;

use num_complex::Complex64 as c64;

use super::laurent::LaurentSymbol;
use super::rational::RationalSymbol;
use crate::error::{GsioError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbolRole {
    /// `[[f, phi], [g, psi]]` of a generalized singular integral operator.
    GsioH,
    ExtensionA,
    ExtensionB,
    QuotientBinvA,
    /// Any other 2x2 matrix function (e.g. a factorization input).
    Generic,
}

impl SymbolRole {
    pub fn name(self) -> &'static str {
        match self {
            SymbolRole::GsioH => "gsio_H",
            SymbolRole::ExtensionA => "extension_A",
            SymbolRole::ExtensionB => "extension_B",
            SymbolRole::QuotientBinvA => "quotient_BinvA",
            SymbolRole::Generic => "generic",
        }
    }
}

/// A 2x2 array of rational symbols.
///
/// For [`SymbolRole::GsioH`] the entries are `f = [0][0]`, `phi = [0][1]`,
/// `g = [1][0]`, `psi = [1][1]`.
#[derive(Clone)]
pub struct MatrixSymbol {
    entries: [[RationalSymbol; 2]; 2],
    role: SymbolRole,
}

impl MatrixSymbol {
    pub fn new(entries: [[RationalSymbol; 2]; 2], role: SymbolRole) -> Self {
        MatrixSymbol { entries, role }
    }

    /// GSIO symbol `[[f, phi], [g, psi]]`.
    pub fn gsio(
        f: impl Into<RationalSymbol>,
        phi: impl Into<RationalSymbol>,
        g: impl Into<RationalSymbol>,
        psi: impl Into<RationalSymbol>,
    ) -> Self {
        MatrixSymbol {
            entries: [[f.into(), phi.into()], [g.into(), psi.into()]],
            role: SymbolRole::GsioH,
        }
    }

    pub fn from_laurent(entries: [[LaurentSymbol; 2]; 2], role: SymbolRole) -> Self {
        let [[a, b], [c, d]] = entries;
        MatrixSymbol { entries: [[a.into(), b.into()], [c.into(), d.into()]], role }
    }

    pub fn diagonal(a: impl Into<RationalSymbol>, d: impl Into<RationalSymbol>, role: SymbolRole) -> Self {
        MatrixSymbol {
            entries: [[a.into(), RationalSymbol::zero()], [RationalSymbol::zero(), d.into()]],
            role,
        }
    }

    pub fn role(&self) -> SymbolRole {
        self.role
    }

    pub fn with_role(mut self, role: SymbolRole) -> Self {
        self.role = role;
        self
    }

    pub fn entry(&self, i: usize, j: usize) -> &RationalSymbol {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[[RationalSymbol; 2]; 2] {
        &self.entries
    }

    pub fn f(&self) -> &RationalSymbol {
        &self.entries[0][0]
    }

    pub fn phi(&self) -> &RationalSymbol {
        &self.entries[0][1]
    }

    pub fn g(&self) -> &RationalSymbol {
        &self.entries[1][0]
    }

    pub fn psi(&self) -> &RationalSymbol {
        &self.entries[1][1]
    }

    pub fn require_role(&self, expected: SymbolRole) -> Result<()> {
        if self.role != expected {
            return Err(GsioError::RoleMismatch {
                expected: expected.name().into(),
                found: self.role.name().into(),
            });
        }
        Ok(())
    }

    /// All four entries as Laurent polynomials, if they are.
    pub fn as_laurent(&self) -> Option<[[&LaurentSymbol; 2]; 2]> {
        let e = &self.entries;
        Some([
            [e[0][0].as_laurent()?, e[0][1].as_laurent()?],
            [e[1][0].as_laurent()?, e[1][1].as_laurent()?],
        ])
    }

    /// Largest bandwidth over Laurent entries (`None` if any entry is rational).
    pub fn laurent_bandwidth(&self) -> Option<usize> {
        let l = self.as_laurent()?;
        Some(l.iter().flatten().map(|s| s.bandwidth()).max().unwrap_or(0))
    }

    pub fn det(&self) -> RationalSymbol {
        let e = &self.entries;
        e[0][0].mul(&e[1][1]).sub(&e[0][1].mul(&e[1][0]))
    }

    pub fn value_at(&self, z: c64) -> [[c64; 2]; 2] {
        let e = &self.entries;
        [
            [e[0][0].value_at(z), e[0][1].value_at(z)],
            [e[1][0].value_at(z), e[1][1].value_at(z)],
        ]
    }

    pub fn map(&self, f: impl Fn(&RationalSymbol) -> RationalSymbol) -> Self {
        let e = &self.entries;
        MatrixSymbol {
            entries: [[f(&e[0][0]), f(&e[0][1])], [f(&e[1][0]), f(&e[1][1])]],
            role: self.role,
        }
    }

    pub fn mul(&self, other: &MatrixSymbol) -> Self {
        let a = &self.entries;
        let b = &other.entries;
        let entry = |i: usize, j: usize| a[i][0].mul(&b[0][j]).add(&a[i][1].mul(&b[1][j]));
        MatrixSymbol {
            entries: [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]],
            role: SymbolRole::Generic,
        }
    }
}

impl fmt::Debug for MatrixSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}[[{:?}, {:?}], [{:?}, {:?}]]",
            self.role.name(),
            self.entries[0][0],
            self.entries[0][1],
            self.entries[1][0],
            self.entries[1][1]
        )
    }
}
