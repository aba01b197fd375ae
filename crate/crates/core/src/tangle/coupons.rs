use super::ast::{Color, Orientation, Strand};
use crate::error::Error;
use crate::rep::{Category, Morphism};
use std::collections::BTreeMap;

/// A morphism usable as `coupon(NAME)`, with its boundary read off the
/// factor names of source and target.
#[derive(Clone, Debug)]
pub struct Coupon {
    pub morphism: Morphism,
    pub inputs: Vec<String>,
    pub outputs: Vec<Strand>,
    /// Coend coupons may be entered by red strands.
    pub accepts_red: bool,
}

#[derive(Clone, Debug, Default)]
pub struct CouponRegistry {
    map: BTreeMap<String, Coupon>,
}

fn boundary(names: &[String]) -> Vec<String> {
    names.iter().filter(|n| n.as_str() != "triv").cloned().collect()
}

fn output_strand(name: &str, color: Color) -> Strand {
    match name.strip_suffix('*') {
        Some(base) => Strand { label: base.into(), orientation: Orientation::Down, color },
        None => Strand { label: name.into(), orientation: Orientation::Up, color },
    }
}

impl CouponRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Built-in coupons: `h`, `eta1`, `eps1` (normalized so that
    /// t(eta1∘eps1) = 1), `iH` and `jH`. The last two are the coend and end
    /// coupons; `jH` emits red strands.
    pub fn standard(cat: &Category) -> Result<Self, Error> {
        let mut reg = Self::new();
        if cat.p1().is_ok() {
            reg.insert("h", cat.h_endomorphism()?)?;
            let n = cat.normalize_trace()?;
            reg.insert("eta1", n.eta1.clone())?;
            reg.insert("eps1", n.eps1.clone())?;
        }
        reg.insert_with("iH", cat.i_map(&cat.regular), true, Color::Blue)?;
        reg.insert_with("jH", cat.j_map(&cat.regular), false, Color::Red)?;
        Ok(reg)
    }

    /// Registers a blue coupon. The morphism must be an intertwiner.
    pub fn insert(&mut self, name: &str, m: Morphism) -> Result<(), Error> {
        self.insert_with(name, m, false, Color::Blue)
    }

    fn insert_with(&mut self, name: &str, m: Morphism, accepts_red: bool, out_color: Color) -> Result<(), Error> {
        if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(Error::Invalid(format!("bad coupon name {name:?}")));
        }
        if !m.is_intertwiner() {
            return Err(Error::Invalid(format!("coupon {name} is not an intertwiner")));
        }
        let inputs = boundary(m.source.factor_names());
        let outputs = boundary(m.target.factor_names()).iter().map(|n| output_strand(n, out_color)).collect();
        self.map.insert(name.to_string(), Coupon { morphism: m, inputs, outputs, accepts_red });
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&Coupon, Error> {
        self.map.get(name).ok_or_else(|| Error::Unknown(format!("coupon {name}")))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.map.keys().map(String::as_str)
    }
}
