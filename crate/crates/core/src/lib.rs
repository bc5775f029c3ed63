pub mod error;
pub mod linalg;
pub mod rational;
pub mod rootdata;
pub mod lp;
pub mod ksmall;
pub mod charring;
pub mod padic;
pub mod satake;
pub mod buildings;
pub mod report;
pub mod acceptance;
