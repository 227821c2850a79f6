//! Loading named entities from JSON, validating them, and emitting a
//! canonical report.

use coalg_kernel::field::FactorConfig;
use coalg_kernel::interchange::{Entity, Report, Workspace};
use coalg_kernel::structure::group_likes;

const DOC: &str = r#"{
  "version": 1,
  "kind": "workspace",
  "entities": {
    "D": {"kind": "coalgebra", "field": {"kind": "Fp", "p": 3}, "dim": 2,
          "delta": [[1, 0, 0, 0], [0, 1, 1, 0]], "epsilon": [1, 0]},
    "pt": {"kind": "coalgebra", "field": {"kind": "Fp", "p": 3}, "dim": 1, "delta": [[1]], "epsilon": [1]},
    "eps": {"kind": "morphism", "source": "D", "target": "pt", "matrix": {"rows": 1, "cols": 2, "entries": [[1, 0]]}}
  }
}"#;

fn main() -> coalg_kernel::Result<()> {
    let cfg = FactorConfig::default();
    let mut ws = Workspace::new(cfg.clone());
    ws.add_document(DOC, "inline", "doc")?;
    ws.resolve()?;
    let checks = ws.validate_all()?;
    println!("{} entities, all valid: {}", ws.names().len(), checks.all_passed());
    let Entity::Coalgebra(d) = ws.get("D")? else { unreachable!() };
    let n = group_likes(d, &cfg)?.len();
    let report = Report::new("grouplikes", checks, serde_json::json!({ "count": n })).with_seed(cfg.seed);
    let text = report.to_canonical();
    println!("{text}");
    assert_eq!(Report::parse(&text)?.to_canonical(), text);
    Ok(())
}
