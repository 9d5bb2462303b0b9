pub mod bounds;
pub mod outage;
pub mod simulate;
pub mod sumcap;
pub mod table1;
pub mod validate;
