#pragma once

/// Umbrella header for the full library.

#include "bnc_driver.hpp"
#include "clique_enum.hpp"
#include "cuts.hpp"
#include "generator.hpp"
#include "instance.hpp"
#include "instance_io.hpp"
#include "lp_core.hpp"
#include "oddcycle_separation.hpp"
#include "oracle.hpp"
#include "preprocess.hpp"
#include "report.hpp"
#include "sec_separation.hpp"
#include "union_find.hpp"
