#pragma once

#include "jstrata/error.hpp"
#include "jstrata/field.hpp"
#include "jstrata/matrix.hpp"
#include "jstrata/poly.hpp"
#include "jstrata/poly_matrix.hpp"
#include "jstrata/jordan.hpp"
#include "jstrata/module.hpp"
#include "jstrata/module_io.hpp"
#include "jstrata/strata.hpp"
#include "jstrata/homological.hpp"
#include "jstrata/gallery.hpp"
