#pragma once

#include "perturbed/axioms.hpp"
#include "perturbed/cli.hpp"
#include "perturbed/contraction.hpp"
#include "perturbed/dsl.hpp"
#include "perturbed/errors.hpp"
#include "perturbed/gallery.hpp"
#include "perturbed/oracle.hpp"
#include "perturbed/problem_io.hpp"
#include "perturbed/reports.hpp"
#include "perturbed/sampling.hpp"
#include "perturbed/selfmap.hpp"
#include "perturbed/solver.hpp"
#include "perturbed/space.hpp"
#include "perturbed/tolerances.hpp"
