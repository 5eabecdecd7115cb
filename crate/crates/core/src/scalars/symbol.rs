use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use super::{Scalar, ScalarError};

const REAL_BIT: u32 = 1 << 31;
const UNIMOD_BIT: u32 = 1 << 30;
const INDEX_MASK: u32 = UNIMOD_BIT - 1;

/// Suffix used for the conjugate partner of a complex symbol (combining macron).
pub const CONJ_MARK: char = '\u{304}';

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Real,
    Complex,
}

/// Handle into the global symbol table.
///
/// Complex symbols occupy an adjacent index pair `(2k, 2k+1)`, so conjugation
/// is a bit flip and needs no table lookup.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(u32);

struct Entry {
    name: String,
    field: bool,
    derivative: Option<[Scalar; 4]>,
}

#[derive(Default)]
struct Table {
    entries: Vec<Option<Entry>>,
    by_name: HashMap<String, Symbol>,
}

fn table() -> &'static RwLock<Table> {
    static TABLE: OnceLock<RwLock<Table>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(Table::default()))
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    let Some(first) = chars.next() else { return false };
    if first.is_ascii_digit() || first == CONJ_MARK || name == "i" {
        return false;
    }
    name.chars().all(|c| !c.is_whitespace() && !"+-*/^()[]{},;:\"'".contains(c))
}

fn partner_name(name: &str) -> String {
    format!("{name}{CONJ_MARK}")
}

struct Spec {
    field: bool,
    unimodular: bool,
}

fn register(name: &str, kind: Kind, spec: Spec, fresh_only: bool) -> Result<Symbol, ScalarError> {
    if !valid_name(name) || name.ends_with(CONJ_MARK) {
        return Err(ScalarError::InvalidName(name.to_string()));
    }
    let mut t = table().write().expect("symbol table poisoned");
    if let Some(&s) = t.by_name.get(name) {
        if fresh_only {
            return Err(ScalarError::DuplicateSymbol(name.to_string()));
        }
        if s.kind() != kind || s.is_unimodular() != spec.unimodular {
            return Err(ScalarError::KindMismatch(name.to_string()));
        }
        return Ok(s);
    }
    let pname = partner_name(name);
    if kind == Kind::Complex && t.by_name.contains_key(&pname) {
        return Err(ScalarError::DuplicateSymbol(pname));
    }
    let base = t.entries.len() as u32;
    if base + 2 > INDEX_MASK {
        panic!("symbol table exhausted");
    }
    let mut flags = 0;
    if kind == Kind::Real {
        flags |= REAL_BIT;
    }
    if spec.unimodular {
        flags |= UNIMOD_BIT;
    }
    let sym = Symbol(base | flags);
    t.entries.push(Some(Entry { name: name.to_string(), field: spec.field, derivative: None }));
    if kind == Kind::Complex {
        t.entries.push(Some(Entry { name: pname.clone(), field: spec.field, derivative: None }));
        t.by_name.insert(pname, Symbol((base + 1) | flags));
    } else {
        t.entries.push(None);
    }
    t.by_name.insert(name.to_string(), sym);
    Ok(sym)
}

impl Symbol {
    /// Registers a fresh symbol. Fails if the name (or its partner name) is taken.
    pub fn new(name: &str, kind: Kind) -> Result<Symbol, ScalarError> {
        register(name, kind, Spec { field: false, unimodular: false }, true)
    }

    /// Returns the symbol with this name, registering it on first use.
    pub fn intern(name: &str, kind: Kind) -> Result<Symbol, ScalarError> {
        register(name, kind, Spec { field: false, unimodular: false }, false)
    }

    /// A symbol standing for a smooth function: `∂_μ` maps it to gradient symbols.
    pub fn field(name: &str, kind: Kind) -> Result<Symbol, ScalarError> {
        let s = register(name, kind, Spec { field: true, unimodular: false }, false)?;
        if !s.is_field() {
            return Err(ScalarError::KindMismatch(name.to_string()));
        }
        Ok(s)
    }

    /// A unimodular function `u = e^{iθ}`: `u·ū = 1` and `∂_μ u = i (∂_μ θ) u`.
    /// `angle` must be a real field symbol.
    pub fn phase(name: &str, angle: Symbol) -> Result<Symbol, ScalarError> {
        if !angle.is_real() || !angle.is_field() {
            return Err(ScalarError::KindMismatch(angle.name()));
        }
        let u = register(name, Kind::Complex, Spec { field: true, unimodular: true }, false)?;
        let ub = u.conj();
        let mut du: [Scalar; 4] = Default::default();
        let mut dub: [Scalar; 4] = Default::default();
        for mu in 0..4 {
            let dtheta = angle.partial(mu);
            du[mu] = Scalar::i() * &dtheta * &Scalar::from(u);
            dub[mu] = -(Scalar::i() * &dtheta * &Scalar::from(ub));
        }
        let mut t = table().write().expect("symbol table poisoned");
        t.entries[u.index()].as_mut().expect("entry").derivative = Some(du);
        t.entries[ub.index()].as_mut().expect("entry").derivative = Some(dub);
        Ok(u)
    }

    pub fn lookup(name: &str) -> Option<Symbol> {
        table().read().expect("symbol table poisoned").by_name.get(name).copied()
    }

    fn index(self) -> usize {
        (self.0 & INDEX_MASK) as usize
    }

    pub fn name(self) -> String {
        let t = table().read().expect("symbol table poisoned");
        t.entries[self.index()].as_ref().expect("dangling symbol").name.clone()
    }

    pub fn kind(self) -> Kind {
        if self.0 & REAL_BIT != 0 {
            Kind::Real
        } else {
            Kind::Complex
        }
    }

    pub fn is_real(self) -> bool {
        self.0 & REAL_BIT != 0
    }

    pub fn is_unimodular(self) -> bool {
        self.0 & UNIMOD_BIT != 0
    }

    pub fn is_field(self) -> bool {
        let t = table().read().expect("symbol table poisoned");
        t.entries[self.index()].as_ref().is_some_and(|e| e.field)
    }

    /// Whether constraint normalization may treat the symbol as nonzero:
    /// model parameters and phases, but not fields or their gradients.
    pub fn is_nonvanishing(self) -> bool {
        self.is_unimodular() || (!self.is_field() && !self.name().starts_with('\u{2202}'))
    }

    /// Conjugate partner (the symbol itself when real).
    pub fn conj(self) -> Symbol {
        if self.is_real() {
            self
        } else {
            Symbol(self.0 ^ 1)
        }
    }

    /// True for the barred member of a complex pair.
    pub fn is_barred(self) -> bool {
        !self.is_real() && self.0 & 1 == 1
    }

    /// `∂_μ` of this symbol: gradient symbol `∂μname` for fields, zero otherwise.
    pub fn partial(self, mu: usize) -> Scalar {
        assert!(mu < 4, "spacetime index out of range");
        {
            let t = table().read().expect("symbol table poisoned");
            let e = t.entries[self.index()].as_ref().expect("dangling symbol");
            if let Some(d) = &e.derivative {
                return d[mu].clone();
            }
            if !e.field {
                return Scalar::zero();
            }
        }
        if self.is_barred() {
            return self.conj().partial(mu).conj();
        }
        let name = format!("\u{2202}{mu}{}", self.name());
        let g = Symbol::intern(&name, self.kind()).expect("gradient symbol name clash");
        Scalar::from(g)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}
