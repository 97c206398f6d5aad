#pragma once

#include "k3lat/errors.hpp"
#include "k3lat/integer.hpp"
#include "k3lat/matrix.hpp"
#include "k3lat/intlat.hpp"
#include "k3lat/lattice.hpp"
#include "k3lat/modq.hpp"
#include "k3lat/discform.hpp"
#include "k3lat/groups.hpp"
#include "k3lat/pipeline.hpp"
#include "k3lat/genus.hpp"
#include "k3lat/io.hpp"
