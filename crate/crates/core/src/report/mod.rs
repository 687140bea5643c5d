//! XML interchange format, HTML report and severity summary.

pub mod html;
pub mod summary;
pub mod xml;

pub use html::render_html;
pub use summary::{summarize, SeveritySummary};
pub use xml::{from_xml, to_xml};
