pub mod report;
pub mod specfile;
pub mod suites;
