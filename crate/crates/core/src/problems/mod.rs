pub mod cluspt;
pub mod dtf;
