# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Retrieval-seeded symbolic regression for motion trajectories."""

__version__ = "0.1.0"
