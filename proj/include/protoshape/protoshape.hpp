#pragma once

#include "protoshape/document.hpp"
#include "protoshape/errors.hpp"
#include "protoshape/finite_space.hpp"
#include "protoshape/generators.hpp"
#include "protoshape/homology.hpp"
#include "protoshape/hypercover.hpp"
#include "protoshape/integer_matrix.hpp"
#include "protoshape/point_set.hpp"
#include "protoshape/proset.hpp"
#include "protoshape/report.hpp"
#include "protoshape/simplicial.hpp"
