mod identities;
mod parse;
mod render;
mod report;

pub use identities::{verify_identities, IdentityResult, SuiteResult};
pub use parse::{parse_expr, parse_ratfunc, parse_ratfunc_in, ExprAST};
pub use render::{render_report, Format};
pub use report::{classify, verify_report, AffineWitness, ClassificationReport, ProjectiveImage, Verdict};

use crate::error::Result;

/// Parses `R` in the variable `var` and classifies it.
pub fn classify_text(text: &str, var: &str) -> Result<ClassificationReport> {
    classify(&parse_ratfunc_in(text, var)?)
}
