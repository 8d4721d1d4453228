//! JSON measure documents:
//! `{"ac": {"kind": "none"|"constant"|"table", "value"?, "xs"?, "ys"?},
//!   "atoms": [{"x", "mass"}], "period": number|null}`.

use serde_json::{json, Map, Value};

use super::{Atom, Density, Measure, Table};
use crate::{Error, Result};

fn number(v: &Value, path: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| Error::spec(path, "expected a number"))
}

fn numbers(v: Option<&Value>, path: &str) -> Result<Vec<f64>> {
    let arr = v
        .ok_or_else(|| Error::spec(path, "missing"))?
        .as_array()
        .ok_or_else(|| Error::spec(path, "expected an array of numbers"))?;
    arr.iter().enumerate().map(|(k, x)| number(x, &format!("{path}[{k}]"))).collect()
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::spec(path, "expected an object"))
}

impl Measure {
    /// Parse a measure document; errors name the offending field.
    pub fn from_json(text: &str) -> Result<Measure> {
        let doc: Value = serde_json::from_str(text).map_err(|e| Error::spec("<document>", e.to_string()))?;
        Measure::from_value(&doc)
    }

    pub fn from_value(doc: &Value) -> Result<Measure> {
        let root = object(doc, "<document>")?;
        let ac = object(root.get("ac").ok_or_else(|| Error::spec("ac", "missing"))?, "ac")?;
        let kind = ac
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::spec("ac.kind", "expected \"none\", \"constant\" or \"table\""))?;
        let density = match kind {
            "none" => Density::None,
            "constant" => {
                let v = number(ac.get("value").ok_or_else(|| Error::spec("ac.value", "missing"))?, "ac.value")?;
                if v < 0.0 {
                    return Err(Error::spec("ac.value", "negative density"));
                }
                Density::Constant(v)
            }
            "table" => Density::Table(Table::new(numbers(ac.get("xs"), "ac.xs")?, numbers(ac.get("ys"), "ac.ys")?)?),
            other => return Err(Error::spec("ac.kind", format!("unknown kind {other:?}"))),
        };
        let mut atoms = Vec::new();
        match root.get("atoms") {
            None | Some(Value::Null) => {}
            Some(Value::Array(items)) => {
                for (k, item) in items.iter().enumerate() {
                    let path = format!("atoms[{k}]");
                    let o = object(item, &path)?;
                    let x = number(o.get("x").ok_or_else(|| Error::spec(format!("{path}.x"), "missing"))?, &format!("{path}.x"))?;
                    let mass = number(
                        o.get("mass").ok_or_else(|| Error::spec(format!("{path}.mass"), "missing"))?,
                        &format!("{path}.mass"),
                    )?;
                    atoms.push(Atom { x, mass });
                }
            }
            Some(_) => return Err(Error::spec("atoms", "expected an array")),
        }
        let period = match root.get("period") {
            None | Some(Value::Null) => None,
            Some(v) => Some(number(v, "period")?),
        };
        Measure::new(density, atoms, period)
    }

    pub fn to_value(&self) -> Value {
        let ac = match &self.density {
            Density::None => json!({"kind": "none"}),
            Density::Constant(c) => json!({"kind": "constant", "value": c}),
            Density::Table(t) => json!({"kind": "table", "xs": t.xs(), "ys": t.ys()}),
        };
        let atoms: Vec<Value> = self.atoms.iter().map(|a| json!({"x": a.x, "mass": a.mass})).collect();
        json!({"ac": ac, "atoms": atoms, "period": self.period})
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("serializable") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_documents() {
        let m = Measure::from_json(r#"{"ac":{"kind":"constant","value":1.0},"atoms":[],"period":null}"#).unwrap();
        assert_eq!(m, Measure::lebesgue(1.0));
        let m = Measure::from_json(r#"{"ac":{"kind":"constant","value":0.39894},"atoms":[{"x":0,"mass":2.50663}],"period":null}"#)
            .unwrap();
        assert_eq!(m.atoms(), &[Atom { x: 0.0, mass: 2.50663 }]);
        let e = Measure::from_json(r#"{"ac":{"kind":"none"},"atoms":[{"x":0,"mass":-1}]}"#).unwrap_err();
        assert!(e.to_string().contains("negative mass"));
        assert!(e.to_string().starts_with("atoms[0].mass"));
    }

    #[test]
    fn field_paths() {
        let e = Measure::from_json(r#"{"ac":{"kind":"table","xs":[0,1],"ys":[1,"a"]},"atoms":[]}"#).unwrap_err();
        assert!(e.to_string().starts_with("ac.ys[1]"), "{e}");
        let e = Measure::from_json(r#"{"ac":{"kind":"constant","value":-2},"atoms":[]}"#).unwrap_err();
        assert!(e.to_string().starts_with("ac.value"), "{e}");
        let e = Measure::from_json(r#"{"ac":{"kind":"none"},"atoms":[{"x":3,"mass":1}],"period":2}"#).unwrap_err();
        assert!(e.to_string().starts_with("atoms[0].x"), "{e}");
        assert!(Measure::from_json("[1,2]").is_err());
    }

    #[test]
    fn round_trip_json() {
        let m = Measure::from_json(
            r#"{"ac":{"kind":"table","xs":[-1,0,1],"ys":[0,1e-1,0]},"atoms":[{"x":-0.5,"mass":2},{"x":0.5,"mass":2}],"period":4}"#,
        )
        .unwrap();
        assert_eq!(Measure::from_json(&m.to_json()).unwrap(), m);
    }
}
