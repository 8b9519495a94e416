#pragma once

#include "orbitgauge/error.hpp"
#include "orbitgauge/rational.hpp"
#include "orbitgauge/domains.hpp"
#include "orbitgauge/diophantine.hpp"
#include "orbitgauge/reeb.hpp"
#include "orbitgauge/persistence.hpp"
#include "orbitgauge/expbounds.hpp"
#include "orbitgauge/parallel.hpp"
#include "orbitgauge/bounds.hpp"
