//! Scene documents: named points, lines, cycles and triangles in JSON.

use std::fmt;
use std::marker::PhantomData;

use indexmap::IndexMap;
use serde::de::{MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use hypgeo_core::{Cycle, HypTriangle, MVec, ProjLine, ProjPoint};

use crate::error::CliError;

/// Name-keyed map that refuses duplicate keys when parsed.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedMap<T>(pub IndexMap<String, T>);

impl<T> Default for NamedMap<T> {
    fn default() -> Self {
        NamedMap(IndexMap::new())
    }
}

impl<T> NamedMap<T> {
    pub fn get(&self, name: &str) -> Option<&T> {
        self.0.get(name)
    }

    pub fn insert(&mut self, name: impl Into<String>, value: T) {
        self.0.insert(name.into(), value);
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> indexmap::map::Iter<'_, String, T> {
        self.0.iter()
    }
}

impl<T: Serialize> Serialize for NamedMap<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for NamedMap<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V<T>(PhantomData<T>);
        impl<'de, T: Deserialize<'de>> Visitor<'de> for V<T> {
            type Value = NamedMap<T>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map of named elements")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Self::Value, A::Error> {
                let mut out = IndexMap::new();
                while let Some((k, v)) = map.next_entry::<String, T>()? {
                    if out.contains_key(&k) {
                        return Err(serde::de::Error::custom(format!("duplicate name {k:?}")));
                    }
                    out.insert(k, v);
                }
                Ok(NamedMap(out))
            }
        }
        d.deserialize_map(V(PhantomData))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CycleDoc {
    pub axis: [f64; 3],
    pub level: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneDocument {
    #[serde(default)]
    pub points: NamedMap<[f64; 3]>,
    #[serde(default)]
    pub lines: NamedMap<[f64; 3]>,
    #[serde(default)]
    pub cycles: NamedMap<CycleDoc>,
    #[serde(default)]
    pub triangles: NamedMap<[String; 3]>,
    #[serde(default)]
    pub metadata: Metadata,
}

fn nonzero(v: &[f64; 3]) -> bool {
    v.iter().all(|x| x.is_finite()) && v.iter().any(|x| *x != 0.0)
}

impl SceneDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: SceneDocument = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scene serializes")
    }

    /// Names unique across all sections, representatives nonzero and
    /// triangle vertices naming points.
    pub fn validate(&self) -> Result<(), CliError> {
        let mut seen = std::collections::HashSet::new();
        let names = self
            .points
            .iter()
            .map(|(k, _)| k)
            .chain(self.lines.iter().map(|(k, _)| k))
            .chain(self.cycles.iter().map(|(k, _)| k))
            .chain(self.triangles.iter().map(|(k, _)| k));
        for n in names {
            if !seen.insert(n.as_str()) {
                return Err(CliError::Input(format!("name {n:?} used twice")));
            }
        }
        for (k, v) in self.points.iter().chain(self.lines.iter()) {
            if !nonzero(v) {
                return Err(CliError::Input(format!("{k:?} has a zero or non-finite representative")));
            }
        }
        for (k, c) in self.cycles.iter() {
            if !nonzero(&c.axis) || !c.level.is_finite() {
                return Err(CliError::Input(format!("cycle {k:?} has a zero or non-finite axis")));
            }
        }
        for (k, vs) in self.triangles.iter() {
            for v in vs {
                if self.points.get(v).is_none() {
                    return Err(CliError::UnknownName(format!("{v} (vertex of {k})")));
                }
            }
        }
        if let Some(t) = self.metadata.tolerance {
            if !(t > 0.0 && t.is_finite()) {
                return Err(CliError::Input("tolerance must be positive".into()));
            }
        }
        Ok(())
    }

    pub fn point(&self, name: &str) -> Result<ProjPoint, CliError> {
        let v = self.points.get(name).ok_or_else(|| CliError::UnknownName(name.into()))?;
        Ok(ProjPoint::new(MVec::from_array(*v))?)
    }

    pub fn line(&self, name: &str) -> Result<ProjLine, CliError> {
        let v = self.lines.get(name).ok_or_else(|| CliError::UnknownName(name.into()))?;
        Ok(ProjLine::new(MVec::from_array(*v))?)
    }

    pub fn cycle(&self, name: &str) -> Result<Cycle, CliError> {
        let c = self.cycles.get(name).ok_or_else(|| CliError::UnknownName(name.into()))?;
        Ok(Cycle::new(MVec::from_array(c.axis), c.level)?)
    }

    pub fn triangle(&self, name: &str) -> Result<HypTriangle, CliError> {
        let vs = self.triangles.get(name).ok_or_else(|| CliError::UnknownName(name.into()))?;
        Ok(HypTriangle::new(self.point(&vs[0])?, self.point(&vs[1])?, self.point(&vs[2])?)?)
    }

    pub fn add_point(&mut self, name: &str, p: &ProjPoint) {
        self.points.insert(name, p.rep().to_array());
    }

    pub fn add_cycle(&mut self, name: &str, c: &Cycle) {
        self.cycles.insert(name, CycleDoc { axis: c.axis().to_array(), level: c.level() });
    }
}
