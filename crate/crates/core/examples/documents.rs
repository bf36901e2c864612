// The JSON layer used by the `tropjac` binary: parse a document, build the
// curve and emit a family report.

use tropjac::cli::{FamilyDocument, FamilyReportJson};
use tropjac::strata::{build_family, saturated_system};

const DOC: &str = r#"{
  "monoid": {"rank": 2, "generators": [[1, 0], [0, 1]]},
  "curve": {
    "vertices": ["v"],
    "edges": [
      {"id": "a", "ends": ["v", "v"], "length": [2, 0]},
      {"id": "b", "ends": ["v", "v"], "length": [0, "3"]}
    ]
  }
}"#;

pub fn run_example() -> tropjac::Result<()> {
    let doc = FamilyDocument::parse(DOC).map_err(|e| tropjac::Error::Inconsistent(e.to_string()))?;
    let (base, curve) = doc.build()?;
    let fam = build_family(&base, &curve)?;
    let models = saturated_system(&fam)?;
    let report = FamilyReportJson::new(&fam, Some(&models))?;
    println!("{}", serde_json::to_string(&report).expect("serializable"));

    if let Err(e) = FamilyDocument::parse(&DOC.replace("[2, 0]", "[2, null]")) {
        println!("{e}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> tropjac::Result<()> {
    run_example()
}
