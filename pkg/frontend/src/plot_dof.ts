import { runFigureScript } from './cli';
import { renderDofRatio } from './figures';

runFigureScript('plot_dof', renderDofRatio);
