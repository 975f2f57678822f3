#pragma once

#include "ramsey/numeric.hpp"
#include "ramsey/groundset.hpp"
#include "ramsey/arithfun.hpp"
#include "ramsey/certificate.hpp"
#include "ramsey/largeness.hpp"
#include "ramsey/density.hpp"
#include "ramsey/patterns.hpp"
#include "ramsey/constructions.hpp"
#include "ramsey/finitefield.hpp"
#include "ramsey/normform.hpp"
#include "ramsey/verify.hpp"
#include "ramsey/set_registry.hpp"
#include "ramsey/experiment.hpp"
