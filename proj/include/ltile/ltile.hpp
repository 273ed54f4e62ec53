#pragma once

#include "ltile/numtheory.hpp"
#include "ltile/interval.hpp"
#include "ltile/ball.hpp"
#include "ltile/group.hpp"
#include "ltile/indexed_group.hpp"
#include "ltile/splitting.hpp"
#include "ltile/structural.hpp"
#include "ltile/search.hpp"
#include "ltile/normal_form.hpp"
#include "ltile/lattice.hpp"
#include "ltile/screen.hpp"
