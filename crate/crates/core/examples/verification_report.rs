//! Running a verification suite from a TOML config and emitting its report,
//! as the `orekit` binary does.

use orekit::report::Format;
use orekit::suite::{run_suite, SuiteConfig};

const CONFIG: &str = r#"
suite = "special"
ring = "zmod:6"
seed = 11

[subext]
kind = "monoid"
gens = ["x0^2"]

[bounds]
d = 4
d1 = 2
d2 = 4
"#;

fn main() -> orekit::Result<()> {
    let cfg = SuiteConfig::from_toml(CONFIG)?;
    let report = run_suite(&cfg)?;
    print!("{}", report.emit(Format::Text));
    let json = report.without_timing().to_json();
    println!("JSON report: {} bytes, exit code {}", json.len(), report.exit_code());
    Ok(())
}
