//! Group specifications as read from JSON: a named family or explicit
//! generators.

use std::sync::Arc;

use irrbase_core::chain::is_soluble;
use irrbase_core::field::FieldSpec;
use irrbase_core::lab::{BoundContext, FamilyContext, FamilyShape};
use irrbase_core::perm::{Perm, PermGroup};
use irrbase_core::projective::{
    build_action, build_pair_action, ActionTable, LinearKind, PairKind, DEFAULT_ENUMERATION_CAP,
};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Pgl,
    Pgammal,
    Psl,
    Sym,
    Alt,
    Cyclic,
    Dihedral,
    PairSum,
    PairLeq,
}

impl Family {
    pub fn parse(s: &str) -> Option<Family> {
        serde_json::from_value(serde_json::Value::String(s.to_string())).ok()
    }

    fn linear_kind(self) -> Option<LinearKind> {
        match self {
            Family::Pgl => Some(LinearKind::Pgl),
            Family::Pgammal => Some(LinearKind::Pgammal),
            Family::Psl => Some(LinearKind::Psl),
            _ => None,
        }
    }

    fn pair_kind(self) -> Option<PairKind> {
        match self {
            Family::PairSum => Some(PairKind::DirectSum),
            Family::PairLeq => Some(PairKind::Contained),
            _ => None,
        }
    }
}

/// Either `{family, d, m, q}` / `{family, degree}` or `{degree, generators}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    /// Linear group underlying a pair action (default `pgl`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub linear: Option<LinearKind>,
    /// Adds the graph automorphism to a pair action.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duality: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<u32>>>,
    /// Overrides the large-base classification used by the bound suite.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub large_base: Option<bool>,
}

/// A validated specification with its permutation group.
#[derive(Debug, Clone)]
pub struct BuiltGroup {
    pub name: String,
    pub group: PermGroup,
    pub table: Option<ActionTable>,
    pub context: BoundContext,
    /// For pair actions: the linear group on `m`-subspaces. For `pgammal`:
    /// `pgl` on the same points.
    pub companion: Option<GroupSpec>,
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(msg.into())
}

impl GroupSpec {
    pub fn family(family: Family) -> Self {
        GroupSpec { family: Some(family), ..Default::default() }
    }

    pub fn linear(family: Family, d: usize, m: usize, q: u64) -> Self {
        GroupSpec { d: Some(d), m: Some(m), q: Some(q), ..Self::family(family) }
    }

    pub fn natural(family: Family, degree: usize) -> Self {
        GroupSpec { degree: Some(degree), ..Self::family(family) }
    }

    pub fn explicit(degree: usize, generators: Vec<Vec<u32>>) -> Self {
        GroupSpec { degree: Some(degree), generators: Some(generators), ..Default::default() }
    }

    pub fn named(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    /// The given name, or one derived from the parameters.
    pub fn label(&self) -> String {
        if let Some(n) = &self.name {
            return n.clone();
        }
        let show = |x: Option<usize>| x.map_or("?".to_string(), |v| v.to_string());
        match self.family {
            None => format!("explicit({})", show(self.degree)),
            Some(f) => {
                let tag = serde_json::to_value(f).unwrap();
                let tag = tag.as_str().unwrap();
                if f.linear_kind().is_some() || f.pair_kind().is_some() {
                    let mut s = format!(
                        "{tag}({},{},{})",
                        show(self.d),
                        show(Some(self.m.unwrap_or(1))),
                        self.q.map_or("?".to_string(), |q| q.to_string())
                    );
                    if let Some(k) = self.linear.filter(|&k| k != LinearKind::Pgl) {
                        s.push_str(&format!("/{}", serde_json::to_value(k).unwrap().as_str().unwrap()));
                    }
                    if self.duality == Some(true) {
                        s.push_str("+duality");
                    }
                    s
                } else {
                    format!("{tag}({})", show(self.degree))
                }
            }
        }
    }

    fn reject(&self, fields: &[(&str, bool)]) -> Result<(), CliError> {
        match fields.iter().find(|(_, present)| *present) {
            Some((name, _)) => Err(invalid(format!("{}: field `{name}` does not apply", self.label()))),
            None => Ok(()),
        }
    }

    pub fn build(&self) -> Result<BuiltGroup, CliError> {
        let name = self.label();
        let Some(family) = self.family else {
            return self.build_explicit(name);
        };
        if let Some(kind) = family.linear_kind() {
            self.reject(&[
                ("degree", self.degree.is_some()),
                ("generators", self.generators.is_some()),
                ("linear", self.linear.is_some()),
                ("duality", self.duality.is_some()),
            ])?;
            let (d, m, q, field) = self.linear_params()?;
            let table = build_action(kind, d, m, field, DEFAULT_ENUMERATION_CAP)
                .map_err(|e| invalid(format!("{name}: {e}")))?;
            let companion = (kind == LinearKind::Pgammal).then(|| GroupSpec::linear(Family::Pgl, d, m, q));
            let shape = FamilyShape::Subspaces { kind };
            return Ok(self.finish(name, table, shape, d, m, q, companion));
        }
        if let Some(pair) = family.pair_kind() {
            self.reject(&[("degree", self.degree.is_some()), ("generators", self.generators.is_some())])?;
            let (d, m, q, field) = self.linear_params()?;
            let kind = self.linear.unwrap_or(LinearKind::Pgl);
            let duality = self.duality.unwrap_or(false);
            let table = build_pair_action(pair, kind, d, m, field, duality, DEFAULT_ENUMERATION_CAP)
                .map_err(|e| invalid(format!("{name}: {e}")))?;
            let linear_family = match kind {
                LinearKind::Pgl => Family::Pgl,
                LinearKind::Pgammal => Family::Pgammal,
                LinearKind::Psl => Family::Psl,
            };
            let companion = Some(GroupSpec::linear(linear_family, d, m, q));
            let shape = FamilyShape::Pairs { pair, kind, duality };
            return Ok(self.finish(name, table, shape, d, m, q, companion));
        }
        self.reject(&[
            ("d", self.d.is_some()),
            ("m", self.m.is_some()),
            ("q", self.q.is_some()),
            ("linear", self.linear.is_some()),
            ("duality", self.duality.is_some()),
            ("generators", self.generators.is_some()),
        ])?;
        let n = self.degree.ok_or_else(|| invalid(format!("{name}: `degree` is required")))?;
        if n == 0 {
            return Err(invalid(format!("{name}: degree must be positive")));
        }
        let group = match family {
            Family::Sym => PermGroup::symmetric(n),
            Family::Alt => PermGroup::alternating(n),
            Family::Cyclic => PermGroup::cyclic(n),
            _ => PermGroup::dihedral(n),
        };
        // Natural actions of symmetric and alternating groups have alternating socle on 1-sets.
        let large = matches!(family, Family::Sym | Family::Alt) && n >= 5;
        let context = BoundContext {
            large_base: self.large_base.unwrap_or(large),
            soluble: Some(is_soluble(&group)),
            ..Default::default()
        };
        Ok(BuiltGroup { name, group, table: None, context, companion: None })
    }

    fn linear_params(&self) -> Result<(usize, usize, u64, Arc<FieldSpec>), CliError> {
        let name = self.label();
        let d = self.d.ok_or_else(|| invalid(format!("{name}: `d` is required")))?;
        let q = self.q.ok_or_else(|| invalid(format!("{name}: `q` is required")))?;
        let m = self.m.unwrap_or(1);
        let field = FieldSpec::from_order(q).map_err(|e| invalid(format!("{name}: {e}")))?;
        Ok((d, m, q, Arc::new(field)))
    }

    #[allow(clippy::too_many_arguments)]
    fn finish(
        &self,
        name: String,
        table: ActionTable,
        shape: FamilyShape,
        d: usize,
        m: usize,
        q: u64,
        companion: Option<GroupSpec>,
    ) -> BuiltGroup {
        let group = table.group();
        let context = BoundContext {
            large_base: self.large_base.unwrap_or(false),
            soluble: Some(is_soluble(&group)),
            family: Some(FamilyContext { shape, d, m, q }),
            ..Default::default()
        };
        BuiltGroup { name, group, table: Some(table), context, companion }
    }

    fn build_explicit(&self, name: String) -> Result<BuiltGroup, CliError> {
        self.reject(&[
            ("d", self.d.is_some()),
            ("m", self.m.is_some()),
            ("q", self.q.is_some()),
            ("linear", self.linear.is_some()),
            ("duality", self.duality.is_some()),
        ])?;
        let gens = self
            .generators
            .as_ref()
            .ok_or_else(|| invalid(format!("{name}: either `family` or `generators` is required")))?;
        let degree = match (self.degree, gens.first()) {
            (Some(n), _) => n,
            (None, Some(g)) => g.len(),
            (None, None) => return Err(invalid(format!("{name}: `degree` is required with no generators"))),
        };
        if degree == 0 {
            return Err(invalid(format!("{name}: degree must be positive")));
        }
        let perms = gens
            .iter()
            .enumerate()
            .map(|(i, images)| {
                if images.len() != degree {
                    return Err(invalid(format!(
                        "{name}: generator {i} has {} images, expected {degree}",
                        images.len()
                    )));
                }
                Perm::from_images(images.clone()).map_err(|e| invalid(format!("{name}: generator {i}: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let group = PermGroup::new(degree, perms).map_err(|e| invalid(format!("{name}: {e}")))?;
        let context = BoundContext {
            large_base: self.large_base.unwrap_or(false),
            soluble: Some(is_soluble(&group)),
            ..Default::default()
        };
        Ok(BuiltGroup { name, group, table: None, context, companion: None })
    }
}

/// Parses a permutation file: a JSON array of 0-based image arrays.
pub fn parse_generators(text: &str) -> Result<Vec<Vec<u32>>, CliError> {
    serde_json::from_str(text).map_err(|e| invalid(format!("generator file: {e}")))
}
