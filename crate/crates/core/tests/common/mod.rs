#![allow(dead_code)]

pub mod oracle;

use std::sync::Arc;

use irrbase_core::field::FieldSpec;
use irrbase_core::perm::{Perm, PermGroup};
use irrbase_core::projective::{build_action, LinearKind, DEFAULT_ENUMERATION_CAP};

pub fn linear(kind: LinearKind, d: usize, m: usize, q: u64) -> PermGroup {
    let field = Arc::new(FieldSpec::from_order(q).unwrap());
    build_action(kind, d, m, field, DEFAULT_ENUMERATION_CAP).unwrap().group()
}

fn perm(images: &[u32]) -> Perm {
    Perm::from_images(images.to_vec()).unwrap()
}

/// Every named group of degree at most 8 and order at most 2000 used across the tests.
pub fn small_groups() -> Vec<(String, PermGroup)> {
    let mut out = Vec::new();
    for n in 3..=6 {
        out.push((format!("S{n}"), PermGroup::symmetric(n)));
        out.push((format!("A{n}"), PermGroup::alternating(n)));
    }
    for n in 3..=8 {
        out.push((format!("C{n}"), PermGroup::cyclic(n)));
        out.push((format!("D{n}"), PermGroup::dihedral(n)));
    }
    out.push(("PGL(2,2)".into(), linear(LinearKind::Pgl, 2, 1, 2)));
    out.push(("PGL(2,3)".into(), linear(LinearKind::Pgl, 2, 1, 3)));
    out.push(("PSL(2,3)".into(), linear(LinearKind::Psl, 2, 1, 3)));
    out.push(("PGL(2,4)".into(), linear(LinearKind::Pgl, 2, 1, 4)));
    out.push(("PGammaL(2,4)".into(), linear(LinearKind::Pgammal, 2, 1, 4)));
    out.push(("PGL(2,5)".into(), linear(LinearKind::Pgl, 2, 1, 5)));
    out.push(("PGL(2,7)".into(), linear(LinearKind::Pgl, 2, 1, 7)));
    out.push(("PGL(3,2)".into(), linear(LinearKind::Pgl, 3, 1, 2)));
    out.push(("double transposition".into(), PermGroup::new(4, vec![perm(&[1, 0, 3, 2])]).unwrap()));
    out.push((
        "S3 x S2 intransitive".into(),
        PermGroup::new(5, vec![perm(&[1, 2, 0, 3, 4]), perm(&[1, 0, 2, 3, 4]), perm(&[0, 1, 2, 4, 3])]).unwrap(),
    ));
    out.push(("trivial".into(), PermGroup::trivial(4)));
    out
}
