pub mod cosetequiv;
pub mod exactla;
pub mod fpgrp;
pub mod harness;
pub mod homology;
pub mod nilquot;
pub mod permgrp;
