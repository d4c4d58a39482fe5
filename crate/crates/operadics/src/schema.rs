//! JSON formats for operads and modules.
//!
//! An operad file lists the carrier level by level, names the identity, and
//! spells out every defined partial composition as a `[a, slot, b, result]`
//! quadruple. Element names must be unique across the whole carrier so the
//! quadruples can use bare names. Exports are canonically ordered, so equal
//! operads serialize byte-identically.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::elem::Elem;
use crate::graded::GradedSet;
use crate::modules::RightModule;
use crate::table::{OpRef, TableOperad};
use crate::{Error, Result};

pub fn operad_to_value(op: &TableOperad) -> Result<Value> {
    let mut levels = Vec::new();
    for n in 0..=op.level_bound() {
        levels.push(
            op.elements(n)?
                .into_iter()
                .map(|r| Value::String(op.name_of(r)))
                .collect::<Vec<_>>(),
        );
    }
    let mut comps = Vec::new();
    op.for_each_composable(|a, slot, b| {
        if let Ok(r) = op.partial_compose(a, slot, b) {
            comps.push(json!([op.name_of(a), slot, op.name_of(b), op.name_of(r),]));
        }
        Ok(())
    })?;
    Ok(json!({
        "name": op.name(),
        "level_bound": op.level_bound(),
        "levels": levels,
        "identity": op.name_of(op.identity()),
        "compositions": comps,
    }))
}

pub fn operad_from_value(v: &Value) -> Result<TableOperad> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Schema("operad must be a JSON object".into()))?;
    let name = obj.get("name").and_then(Value::as_str).unwrap_or("operad");
    let levels_v = obj
        .get("levels")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Schema("operad missing \"levels\"".into()))?;
    let mut level_names = Vec::with_capacity(levels_v.len());
    for (n, lv) in levels_v.iter().enumerate() {
        let arr = lv
            .as_array()
            .ok_or_else(|| Error::Schema(format!("operad level {n} must be an array")))?;
        level_names.push(
            arr.iter()
                .map(|e| {
                    e.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| Error::Schema("element names must be strings".into()))
                })
                .collect::<Result<Vec<_>>>()?,
        );
    }
    if let Some(bound) = obj.get("level_bound").and_then(Value::as_u64) {
        if bound + 1 != level_names.len() as u64 {
            return Err(Error::Schema(format!(
                "level_bound {bound} disagrees with {} listed levels",
                level_names.len()
            )));
        }
    }

    // Temporary name index for resolving the quadruples.
    let mut by_name: BTreeMap<&str, OpRef> = BTreeMap::new();
    for (n, names) in level_names.iter().enumerate() {
        for (i, id) in names.iter().enumerate() {
            if by_name
                .insert(id.as_str(), OpRef::new(n as u32, i as u64))
                .is_some()
            {
                return Err(Error::Schema(format!("duplicate element name {id:?}")));
            }
        }
    }
    let resolve = |id: &Value| -> Result<OpRef> {
        let s = id
            .as_str()
            .ok_or_else(|| Error::Schema("composition entries must name elements".into()))?;
        by_name
            .get(s)
            .copied()
            .ok_or_else(|| Error::Schema(format!("unknown element {s:?}")))
    };

    let identity = resolve(
        obj.get("identity")
            .ok_or_else(|| Error::Schema("operad missing \"identity\"".into()))?,
    )?;

    let mut comp = BTreeMap::new();
    for entry in obj
        .get("compositions")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Schema("operad missing \"compositions\"".into()))?
    {
        let quad = entry
            .as_array()
            .filter(|a| a.len() == 4)
            .ok_or_else(|| Error::Schema("composition entries are [a, slot, b, result]".into()))?;
        let a = resolve(&quad[0])?;
        let slot = quad[1]
            .as_u64()
            .and_then(|s| u32::try_from(s).ok())
            .ok_or_else(|| Error::Schema("composition slot must be an integer".into()))?;
        let b = resolve(&quad[2])?;
        let r = resolve(&quad[3])?;
        comp.insert((a, slot, b), r);
    }
    TableOperad::from_table(name, level_names, identity, comp)
}

pub fn module_to_value(module: &RightModule) -> Result<Value> {
    let over = module.over();
    let mut actions = Vec::new();
    for m in module.carrier().iter() {
        for slot in 1..=m.level() {
            for ql in 0..=over.level_bound() {
                for q in over.elements(ql)? {
                    if let Ok(r) = module.act(m, slot, q) {
                        actions.push(json!([m.to_value(), slot, over.name_of(q), r.to_value(),]));
                    }
                }
            }
        }
    }
    Ok(json!({
        "name": module.name(),
        "carrier": module.carrier().to_value(),
        "action": actions,
    }))
}

pub fn module_from_value(v: &Value, over: &TableOperad) -> Result<RightModule> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Schema("module must be a JSON object".into()))?;
    let name = obj.get("name").and_then(Value::as_str).unwrap_or("module");
    let carrier = GradedSet::from_value(
        obj.get("carrier")
            .ok_or_else(|| Error::Schema("module missing \"carrier\"".into()))?,
    )?;
    let mut action = BTreeMap::new();
    for entry in obj
        .get("action")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Schema("module missing \"action\"".into()))?
    {
        let quad = entry
            .as_array()
            .filter(|a| a.len() == 4)
            .ok_or_else(|| Error::Schema("action entries are [m, slot, q, result]".into()))?;
        let m = Elem::from_value(&quad[0], None)?;
        let slot = quad[1]
            .as_u64()
            .and_then(|s| u32::try_from(s).ok())
            .ok_or_else(|| Error::Schema("action slot must be an integer".into()))?;
        let q = over.ref_by_name(
            quad[2]
                .as_str()
                .ok_or_else(|| Error::Schema("action entries name operad elements".into()))?,
        )?;
        let r = Elem::from_value(&quad[3], None)?;
        action.insert((m, slot, q), r);
    }
    Ok(RightModule::from_table(name, over.clone(), carrier, action))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operad_json_round_trip() {
        let e = TableOperad::endomorphism_of_set(2, 2).unwrap();
        let v = operad_to_value(&e).unwrap();
        let back = operad_from_value(&v).unwrap();
        assert!(back.verify().passed());
        assert_eq!(operad_to_value(&back).unwrap(), v);
        // Byte-identical on repeated export.
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            serde_json::to_string(&operad_to_value(&e).unwrap()).unwrap()
        );
    }

    #[test]
    fn bad_operad_files_are_rejected() {
        let v = json!({ "levels": [["x"], ["x"]], "identity": "x", "compositions": [] });
        assert!(operad_from_value(&v).is_err());

        let v = json!({ "levels": [[], ["e"]], "identity": "missing", "compositions": [] });
        assert!(operad_from_value(&v).is_err());
    }

    #[test]
    fn incomplete_tables_load_but_fail_verification() {
        let v = json!({
            "name": "half",
            "levels": [[], ["e", "a"]],
            "identity": "e",
            "compositions": [["e", 1, "e", "e"], ["e", 1, "a", "a"], ["a", 1, "e", "a"]],
        });
        let op = operad_from_value(&v).unwrap();
        let report = op.verify();
        assert!(!report.passed());
        assert!(report.to_text().contains("a o_1 a"), "{}", report.to_text());
    }

    #[test]
    fn module_json_round_trip() {
        let e = TableOperad::endomorphism_of_set(2, 1).unwrap();
        let m = RightModule::over_self(&e, 1).unwrap();
        let v = module_to_value(&m).unwrap();
        let back = module_from_value(&v, &e).unwrap();
        assert!(back.verify().passed());
        assert_eq!(module_to_value(&back).unwrap(), v);
    }
}
